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

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "trizone/error.hpp"

namespace trizone {
namespace {

const FineCategoryMap kFine;

GarmentSpec S(const char* token) { return kFine.Parse(token); }

// Reads the hand-transcribed table into (pg, pc) -> method name.
std::map<std::pair<std::string, std::string>, std::string> LoadGoldenTable() {
  std::ifstream in(std::string(TRIZONE_TEST_DATA_DIR) + "/golden/routing_table.txt");
  EXPECT_TRUE(in.good());
  std::map<std::pair<std::string, std::string>, std::string> cells;
  std::vector<std::string> columns;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::string head;
    words >> head;
    if (columns.empty()) {
      for (std::string w; words >> w;) columns.push_back(w);
      continue;
    }
    for (const std::string& pc : columns) {
      std::string cell;
      words >> cell;
      cells[{head, pc}] = cell;
    }
  }
  return cells;
}

TEST(Routing, Examples) {
  EXPECT_EQ(Route(S("upper/short"), S("upper/short")), (RoutingDecision{Method::kIdm, Round::kRound1}));
  EXPECT_EQ(Route(S("upper/long"), S("upper/short")), (RoutingDecision{Method::kIdmS, Round::kRound1}));
  EXPECT_EQ(Route(S("upper/short"), S("dress/long")),
            (RoutingDecision{Method::kCrossVton, Round::kRound2}));
  EXPECT_EQ(Route(S("lower/short"), S("upper/short")), (RoutingDecision{Method::kNa, Round::kNone}));
}

TEST(Routing, MatchesHandTranscribedTable) {
  const auto cells = LoadGoldenTable();
  ASSERT_EQ(cells.size(), 36u);
  for (const GarmentSpec& pg : AllSpecs()) {
    for (const GarmentSpec& pc : AllSpecs()) {
      const std::string expected = cells.at({FormatSpec(pg), FormatSpec(pc)});
      EXPECT_EQ(MethodName(Route(pc, pg).method), expected)
          << "pg=" << FormatSpec(pg) << " pc=" << FormatSpec(pc);
    }
  }
}

TEST(Routing, GroupCountsOverAllPairs) {
  std::map<Method, int> counts;
  for (const GarmentSpec& pg : AllSpecs()) {
    for (const GarmentSpec& pc : AllSpecs()) ++counts[Route(pc, pg).method];
  }
  EXPECT_EQ(counts[Method::kIdm], 14);
  EXPECT_EQ(counts[Method::kIdmS], 6);
  EXPECT_EQ(counts[Method::kCrossVton], 8);
  EXPECT_EQ(counts[Method::kNa], 8);
}

TEST(Routing, RoundInvariantAndNaSymmetry) {
  for (const GarmentSpec& a : AllSpecs()) {
    for (const GarmentSpec& b : AllSpecs()) {
      const RoutingDecision d = Route(a, b);
      EXPECT_EQ(d.method == Method::kCrossVton, d.round == Round::kRound2);
      EXPECT_EQ(d.method == Method::kNa, d.round == Round::kNone);
      if (d.method == Method::kIdm || d.method == Method::kIdmS) {
        EXPECT_EQ(d.round, Round::kRound1);
      }
      EXPECT_EQ(d.method == Method::kNa, Route(b, a).method == Method::kNa);
      EXPECT_EQ(d, Route(a, b));
    }
  }
}

TEST(Routing, MethodNames) {
  for (Method m : {Method::kIdm, Method::kIdmS, Method::kCrossVton, Method::kNa}) {
    EXPECT_EQ(ParseMethod(MethodName(m)), m);
  }
  EXPECT_THROW(ParseMethod("idm"), Error);
  EXPECT_EQ(RoundName(Round::kRound2), "round2");
}

TEST(Routing, PlanPartitionIsStable) {
  std::vector<SpecPair> pairs;
  for (const GarmentSpec& pg : AllSpecs()) {
    for (const GarmentSpec& pc : AllSpecs()) pairs.push_back({pc, pg});
  }
  const ConstructionPlan plan = EnumeratePlan(pairs);
  EXPECT_EQ(plan.round1.size(), 20u);
  EXPECT_EQ(plan.round2.size(), 8u);
  EXPECT_EQ(plan.rejected.size(), 8u);
  for (const auto* group : {&plan.round1, &plan.round2, &plan.rejected}) {
    for (std::size_t i = 1; i < group->size(); ++i) {
      EXPECT_LT((*group)[i - 1].index, (*group)[i].index);
    }
    for (const PlanEntry& e : *group) {
      EXPECT_EQ(e.decision, Route(pairs[e.index].pc, pairs[e.index].pg));
    }
  }
}

TEST(Routing, PlanEmptyAndDuplicates) {
  const ConstructionPlan empty = EnumeratePlan({});
  EXPECT_TRUE(empty.round1.empty() && empty.round2.empty() && empty.rejected.empty());
  const SpecPair p{S("upper/short"), S("dress/long")};
  const ConstructionPlan dup = EnumeratePlan({p, p});
  ASSERT_EQ(dup.round2.size(), 2u);
  EXPECT_EQ(dup.round2[0].index, 0u);
  EXPECT_EQ(dup.round2[1].index, 1u);
}

TEST(Routing, PlanLineFormat) {
  const ConstructionPlan plan = EnumeratePlan({{S("upper/short"), S("dress/long")}});
  EXPECT_EQ(FormatPlanLine(plan.round2.at(0)),
            R"({"index":0,"pc":"upper/short","pg":"dress/long","method":"CROSSVTON","round":"round2"})");
  EXPECT_EQ(FormatPlan(plan), FormatPlanLine(plan.round2.at(0)) + "\n");
}

}  // namespace
}  // namespace trizone
