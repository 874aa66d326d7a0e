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

#ifndef TRIZONE_ROUTING_HPP_
#define TRIZONE_ROUTING_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "trizone/garment.hpp"

namespace trizone {

enum class Method { kIdm, kIdmS, kCrossVton, kNa };
enum class Round { kRound1 = 1, kRound2 = 2, kNone = 0 };

std::string_view MethodName(Method method);  // "IDM" | "IDM_S" | "CROSSVTON" | "NA"
Method ParseMethod(std::string_view name);
std::string_view RoundName(Round round);     // "round1" | "round2" | "none"

struct RoutingDecision {
  Method method = Method::kNa;
  Round round = Round::kNone;
  friend bool operator==(const RoutingDecision&, const RoutingDecision&) = default;
};

// Construction method for replacing the garment of a ground-truth image
// wearing `pg` so that the constructed image wears `pc`. Total over all 36
// spec pairs.
RoutingDecision Route(const GarmentSpec& pc, const GarmentSpec& pg);

struct SpecPair {
  GarmentSpec pc;
  GarmentSpec pg;
};

struct PlanEntry {
  std::size_t index = 0;  // position in the submitted list
  SpecPair pair;
  RoutingDecision decision;
};

struct ConstructionPlan {
  std::vector<PlanEntry> round1;    // IDM and IDM_S
  std::vector<PlanEntry> round2;    // CROSSVTON
  std::vector<PlanEntry> rejected;  // NA
};

// Stable partition by round; duplicates are kept.
ConstructionPlan EnumeratePlan(const std::vector<SpecPair>& pairs);

// One line per entry:
// {"index":0,"pc":"upper/short","pg":"dress/long","method":"CROSSVTON","round":"round2"}
std::string FormatPlanLine(const PlanEntry& entry);
std::string FormatPlan(const ConstructionPlan& plan);

}  // namespace trizone

#endif  // TRIZONE_ROUTING_HPP_
