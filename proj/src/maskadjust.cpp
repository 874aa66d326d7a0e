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

#include "trizone/maskadjust.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "trizone/error.hpp"
#include "trizone/random.hpp"

namespace trizone {

void ValidateShrinkRange(const ShiftPolicy& policy) {
  if (!(policy.shrink_min > 0.0 && policy.shrink_min <= policy.shrink_max &&
        policy.shrink_max < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "shrink range must satisfy 0 < min <= max < 1");
  }
}

AdjustedMask StretchDown(const BinaryMask& gen, const LabelMap& densepose,
                         const ShiftPolicy& policy) {
  if (policy.mode != ShiftMode::kStretchDown) {
    throw Error(ErrorCode::kInvalidArgument, "StretchDown called with a ShrinkUp policy");
  }
  RequireSameGrid(gen.grid(), densepose.grid(), "generation region vs densepose");
  const auto part = densepose.palette().find(policy.densepose_target_part);
  if (!part) {
    throw Error(ErrorCode::kUnknownPart,
                "densepose part '" + policy.densepose_target_part + "' not in palette");
  }

  const ImageGrid& g = gen.grid();
  BinaryMask adjusted = gen;
  for (int c = 0; c < g.width; ++c) {
    int top = -1;
    int part_bottom = -1;
    for (int r = 0; r < g.height; ++r) {
      if (top < 0 && gen.test(r, c)) top = r;
      if (densepose.at(r, c) == *part) part_bottom = r;
    }
    if (top < 0) continue;
    for (int r = top + 1; r <= part_bottom; ++r) adjusted.set(r, c);
  }
  return {std::move(adjusted), BinaryMask::Empty(g)};
}

int ShrinkRows(int box_height, const ShiftPolicy& policy) {
  ValidateShrinkRange(policy);
  Rng rng(policy.seed);
  const double u = policy.shrink_min == policy.shrink_max
                       ? policy.shrink_min
                       : rng.uniform(policy.shrink_min, policy.shrink_max);
  const int delta = static_cast<int>(std::lround(u * box_height));
  // Never remove the whole garment.
  return std::clamp(delta, 0, box_height - 1);
}

AdjustedMask ShrinkUp(const BinaryMask& gen, const ShiftPolicy& policy) {
  if (policy.mode != ShiftMode::kShrinkUp) {
    throw Error(ErrorCode::kInvalidArgument, "ShrinkUp called with a StretchDown policy");
  }
  const auto box = BoundingBox(gen);
  if (!box) throw Error(ErrorCode::kEmptyMask, "cannot shrink an empty generation region");

  const int delta = ShrinkRows(box->height(), policy);
  BinaryMask adjusted = gen;
  BinaryMask residual = BinaryMask::Empty(gen.grid());
  for (int r = box->bottom - delta + 1; r <= box->bottom; ++r) {
    for (int c = box->left; c <= box->right; ++c) {
      if (gen.test(r, c)) {
        adjusted.set(r, c, false);
        residual.set(r, c);
      }
    }
  }
  return {std::move(adjusted), std::move(residual)};
}

InpaintRequest MakeInpaintRequest(const RgbImage& image, const BinaryMask& residual) {
  RequireSameGrid(image.grid(), residual.grid(), "inpaint image vs region");
  return InpaintRequest{image, residual, residual.none()};
}

}  // namespace trizone
