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

#ifndef TRIZONE_ZONEALGEBRA_HPP_
#define TRIZONE_ZONEALGEBRA_HPP_

#include <string>
#include <string_view>

#include "trizone/maskcore.hpp"

namespace trizone {

// Ground-truth tri-zone construction for both construction rounds.
//
// Round 1 (mask-based constructor):
//   tryon = garment pixels of the ground-truth parsing map
//   imagi = (generation region AND constructed-image foreground) - tryon
// Round 2 (two-stage model as constructor):
//   tryon = garment pixels of the ground-truth parsing map
//   imagi = ((pred_tryon OR pred_imagi) AND foreground) - tryon
// Reconstruction is always the residual zone.

// How the round-2 expression groups its union and intersection. The written
// form "A OR B AND C" admits both readings.
enum class Round2Grouping {
  kIntersectUnion,       // ((A OR B) AND C); default
  kIntersectImagiOnly,   // (A OR (B AND C))
};

std::string_view Round2GroupingName(Round2Grouping grouping);
// Accepts "intersect-union" and "intersect-imagi-only"; throws kInvalidArgument.
Round2Grouping ParseRound2Grouping(std::string_view name);

struct Round1Inputs {
  LabelMap pm_g;
  std::string garment_class;
  BinaryMask gen_region;
  BinaryMask fg_c;
};

struct Round2Inputs {
  LabelMap pm_g2;
  std::string garment_class;
  BinaryMask tryon_p;
  BinaryMask imagi_p;
  BinaryMask fg_c;
};

// Throws kUnknownClass when the class is not declared. A declared class with
// no pixels (e.g. an all-background map) gives an empty zone.
BinaryMask TryonZone(const LabelMap& pm_g, const std::string& garment_class);

BinaryMask ImaginationZoneRound1(const BinaryMask& gen_region, const BinaryMask& fg_c,
                                 const BinaryMask& tryon);

BinaryMask ImaginationZoneRound2(const BinaryMask& tryon_p, const BinaryMask& imagi_p,
                                 const BinaryMask& fg_c, const BinaryMask& tryon_g,
                                 Round2Grouping grouping = Round2Grouping::kIntersectUnion);

// Throws kOverlap if the zones intersect.
TriZoneMask BuildTriZoneGt(const BinaryMask& tryon, const BinaryMask& imagi);

TriZoneMask BuildRound1Gt(const Round1Inputs& in);
TriZoneMask BuildRound2Gt(const Round2Inputs& in,
                          Round2Grouping grouping = Round2Grouping::kIntersectUnion);

}  // namespace trizone

#endif  // TRIZONE_ZONEALGEBRA_HPP_
