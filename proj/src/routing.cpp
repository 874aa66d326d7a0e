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

#include "trizone/routing.hpp"

#include <array>

#include "json.hpp"

#include "trizone/error.hpp"

namespace trizone {
namespace {

constexpr Method I = Method::kIdm;
constexpr Method S = Method::kIdmS;
constexpr Method X = Method::kCrossVton;
constexpr Method N = Method::kNa;

// Rows: ground-truth spec. Columns: constructed spec. Both in AllSpecs()
// order (upper/short, upper/long, dress/short, dress/long, lower/short,
// lower/long).
constexpr std::array<std::array<Method, 6>, 6> kTable = {{
    {I, S, I, I, N, N},  // upper/short
    {S, I, I, I, N, N},  // upper/long
    {X, X, I, S, X, X},  // dress/short
    {X, X, S, I, X, X},  // dress/long
    {N, N, S, I, I, I},  // lower/short
    {N, N, S, I, I, I},  // lower/long
}};

std::size_t SpecIndex(const GarmentSpec& spec) {
  return 2 * static_cast<std::size_t>(spec.category) +
         static_cast<std::size_t>(spec.length);
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kIdm: return "IDM";
    case Method::kIdmS: return "IDM_S";
    case Method::kCrossVton: return "CROSSVTON";
    case Method::kNa: return "NA";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kIdm, Method::kIdmS, Method::kCrossVton, Method::kNa}) {
    if (MethodName(m) == name) return m;
  }
  throw Error(ErrorCode::kFormat, "unknown method '" + std::string(name) + "'");
}

std::string_view RoundName(Round round) {
  switch (round) {
    case Round::kRound1: return "round1";
    case Round::kRound2: return "round2";
    case Round::kNone: return "none";
  }
  return "?";
}

RoutingDecision Route(const GarmentSpec& pc, const GarmentSpec& pg) {
  const Method method = kTable[SpecIndex(pg)][SpecIndex(pc)];
  switch (method) {
    case Method::kCrossVton: return {method, Round::kRound2};
    case Method::kNa: return {method, Round::kNone};
    default: return {method, Round::kRound1};
  }
}

ConstructionPlan EnumeratePlan(const std::vector<SpecPair>& pairs) {
  ConstructionPlan plan;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    PlanEntry entry{i, pairs[i], Route(pairs[i].pc, pairs[i].pg)};
    switch (entry.decision.round) {
      case Round::kRound1: plan.round1.push_back(entry); break;
      case Round::kRound2: plan.round2.push_back(entry); break;
      case Round::kNone: plan.rejected.push_back(entry); break;
    }
  }
  return plan;
}

std::string FormatPlanLine(const PlanEntry& entry) {
  nlohmann::ordered_json j;
  j["index"] = entry.index;
  j["pc"] = FormatSpec(entry.pair.pc);
  j["pg"] = FormatSpec(entry.pair.pg);
  j["method"] = MethodName(entry.decision.method);
  j["round"] = RoundName(entry.decision.round);
  return j.dump();
}

std::string FormatPlan(const ConstructionPlan& plan) {
  std::string out;
  for (const auto* group : {&plan.round1, &plan.round2, &plan.rejected}) {
    for (const auto& entry : *group) out += FormatPlanLine(entry) + "\n";
  }
  return out;
}

}  // namespace trizone
