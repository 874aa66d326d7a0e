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

#include "trizone/zonealgebra.hpp"

#include "trizone/error.hpp"

namespace trizone {

std::string_view Round2GroupingName(Round2Grouping grouping) {
  return grouping == Round2Grouping::kIntersectUnion ? "intersect-union"
                                                     : "intersect-imagi-only";
}

Round2Grouping ParseRound2Grouping(std::string_view name) {
  if (name == "intersect-union") return Round2Grouping::kIntersectUnion;
  if (name == "intersect-imagi-only") return Round2Grouping::kIntersectImagiOnly;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown round-2 grouping '" + std::string(name) + "'");
}

BinaryMask TryonZone(const LabelMap& pm_g, const std::string& garment_class) {
  return ExtractClassMask(pm_g, garment_class);
}

BinaryMask ImaginationZoneRound1(const BinaryMask& gen_region, const BinaryMask& fg_c,
                                 const BinaryMask& tryon) {
  return MaskDifference(MaskIntersect(gen_region, fg_c), tryon);
}

BinaryMask ImaginationZoneRound2(const BinaryMask& tryon_p, const BinaryMask& imagi_p,
                                 const BinaryMask& fg_c, const BinaryMask& tryon_g,
                                 Round2Grouping grouping) {
  RequireSameGrid(tryon_p.grid(), tryon_g.grid(), "round-2 masks");
  const BinaryMask generated =
      grouping == Round2Grouping::kIntersectUnion
          ? MaskIntersect(MaskUnion(tryon_p, imagi_p), fg_c)
          : MaskUnion(tryon_p, MaskIntersect(imagi_p, fg_c));
  return MaskDifference(generated, tryon_g);
}

TriZoneMask BuildTriZoneGt(const BinaryMask& tryon, const BinaryMask& imagi) {
  return AssembleTriZone(tryon, imagi);
}

TriZoneMask BuildRound1Gt(const Round1Inputs& in) {
  RequireSameGrid(in.pm_g.grid(), in.gen_region.grid(), "round-1 inputs");
  const BinaryMask tryon = TryonZone(in.pm_g, in.garment_class);
  return BuildTriZoneGt(tryon, ImaginationZoneRound1(in.gen_region, in.fg_c, tryon));
}

TriZoneMask BuildRound2Gt(const Round2Inputs& in, Round2Grouping grouping) {
  RequireSameGrid(in.pm_g2.grid(), in.tryon_p.grid(), "round-2 inputs");
  const BinaryMask tryon = TryonZone(in.pm_g2, in.garment_class);
  return BuildTriZoneGt(
      tryon, ImaginationZoneRound2(in.tryon_p, in.imagi_p, in.fg_c, tryon, grouping));
}

}  // namespace trizone
