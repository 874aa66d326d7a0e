/* Copyright 2026 The Trizone Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TRIZONE_MASKADJUST_HPP_
#define TRIZONE_MASKADJUST_HPP_

#include <cstdint>
#include <string>

#include "trizone/maskcore.hpp"

namespace trizone {

// Lower-boundary adjustment of a generation region for size-mismatched
// garment pairs within one category.
enum class ShiftMode { kStretchDown, kShrinkUp };

struct ShiftPolicy {
  ShiftMode mode = ShiftMode::kStretchDown;
  // StretchDown: densepose part whose lowest row becomes the new boundary.
  std::string densepose_target_part = "upper_leg";
  // ShrinkUp: the cut is drawn from this fraction range of the box height.
  double shrink_min = 0.15;
  double shrink_max = 0.45;
  std::uint64_t seed = 0;
};

// Throws kInvalidArgument unless 0 < shrink_min <= shrink_max < 1.
void ValidateShrinkRange(const ShiftPolicy& policy);

struct AdjustedMask {
  BinaryMask adjusted;
  BinaryMask residual;  // empty for StretchDown
};

// Per column that intersects `gen`: every row from the column's topmost
// generation pixel down to the lowest pixel of the target part is added.
// Columns where the part is absent, or does not reach below that topmost
// pixel, are left as they are. The result is a superset of `gen` and is
// monotone in `gen`.
AdjustedMask StretchDown(const BinaryMask& gen, const LabelMap& densepose,
                         const ShiftPolicy& policy);

// Draws u ~ U[shrink_min, shrink_max] from policy.seed, cuts
// delta = round(u * box_height) rows (capped at box_height - 1) off the
// bottom of the bounding box, and returns the removed pixels as residual.
AdjustedMask ShrinkUp(const BinaryMask& gen, const ShiftPolicy& policy);

// Number of bottom rows ShrinkUp clears for a box of the given height.
int ShrinkRows(int box_height, const ShiftPolicy& policy);

struct InpaintRequest {
  RgbImage image;
  BinaryMask region;
  // True when the region is empty; callers skip the backend call.
  bool noop = true;
};

InpaintRequest MakeInpaintRequest(const RgbImage& image, const BinaryMask& residual);

}  // namespace trizone

#endif  // TRIZONE_MASKADJUST_HPP_
