// Copyright 2026 The distbackbone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace distbackbone;

TEST(Backbone, ToyMetric) {
  const auto g = fixtures::toy();
  const auto b = compute_backbone(g, LengthOperator::sum());
  EXPECT_EQ(b.tau(), 5.0 / 7.0);
  EXPECT_EQ(b.sigma(), 2.0 / 7.0);
  EXPECT_FALSE(b.keeps(fixtures::key(g, "j", "k")));
  EXPECT_FALSE(b.keeps(fixtures::key(g, "i", "k")));
  EXPECT_TRUE(b.keeps(fixtures::key(g, "i", "j")));
  const auto c = sp_closure_dijkstra(g, LengthOperator::sum());
  EXPECT_EQ(distortion(g, c, fixtures::key(g, "j", "k")), 4.5);
  EXPECT_EQ(distortion(g, c, fixtures::key(g, "i", "k")), 1.125);
  EXPECT_EQ(distortion(g, c, fixtures::key(g, "i", "j")), 1.0);
  ASSERT_EQ(b.removed().size(), 2u);
  EXPECT_EQ(b.removed()[0].closure + b.removed()[1].closure, 10.0);
}

TEST(Backbone, ToyUltrametric) {
  const auto g = fixtures::toy();
  const auto b = compute_backbone(g, LengthOperator::max());
  EXPECT_EQ(b.tau(), 4.0 / 7.0);
  EXPECT_EQ(b.sigma(), 3.0 / 7.0);
  const auto c = sp_closure_dijkstra(g, LengthOperator::max());
  EXPECT_EQ(distortion(g, c, fixtures::key(g, "j", "k")), 9.0);
  EXPECT_EQ(distortion(g, c, fixtures::key(g, "i", "j")), 2.25);
}

TEST(Backbone, RemovingBackboneEdgesRaisesMeanClosure) {
  const auto g = fixtures::toy();
  const auto op = LengthOperator::sum();
  EXPECT_EQ(average_closure_length(sp_closure_dijkstra(remove_edges(g, {fixtures::key(g, "j", "m")}), op)), 7.2);
  EXPECT_EQ(average_closure_length(sp_closure_dijkstra(remove_edges(g, {fixtures::key(g, "i", "l")}), op)), 6.0);
  // Semi-triangular edges are redundant.
  EXPECT_EQ(average_closure_length(sp_closure_dijkstra(remove_edges(g, {fixtures::key(g, "j", "k")}), op)), 4.9);
}

TEST(Backbone, SufficiencyConnectivityBridges) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    RandomGraphSpec spec;
    spec.nodes = 3 + rng() % 15;
    spec.extra_edge_probability = 0.4;
    const auto g = random_graph(spec, rng);
    for (const auto& op : builtin_operators()) {
      const auto b = compute_backbone(g, op);
      EXPECT_TRUE(verify_sufficiency(g, b, op).holds) << op.id();
      const auto cv = verify_connectivity_and_bridges(g, b);
      EXPECT_TRUE(cv.backbone_connected);
      EXPECT_TRUE(cv.bridges_kept);
      for (const auto& key : oracle::removal_bridges(g)) EXPECT_TRUE(b.keeps(key));
    }
  }
}

TEST(Backbone, RemovingSemiTriangularEdgeBreaksNothingButRemovingKeptEdgeDoes) {
  const auto g = fixtures::toy();
  const auto op = LengthOperator::sum();
  const auto b = compute_backbone(g, op);
  for (const auto& e : b.kept()) {
    EXPECT_FALSE(verify_sufficiency(g, remove_edges(g, {e.key}), op).holds);
  }
}

TEST(Backbone, Nesting) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 40; ++t) {
    RandomGraphSpec spec;
    spec.nodes = 4 + rng() % 10;
    spec.extra_edge_probability = 0.5;
    const auto g = random_graph(spec, rng);
    const auto u = compute_backbone(g, LengthOperator::max());
    const auto e = compute_backbone(g, LengthOperator::minkowski(2));
    const auto m = compute_backbone(g, LengthOperator::sum());
    const auto p = compute_backbone(g, LengthOperator::product());
    const auto d = compute_backbone(g, LengthOperator::drastic());
    EXPECT_TRUE(nesting_check(u, e));
    EXPECT_TRUE(nesting_check(e, m));
    EXPECT_TRUE(nesting_check(m, p));
    EXPECT_TRUE(nesting_check(p, d));
  }
  const auto g = fixtures::toy();
  EXPECT_FALSE(nesting_check(compute_backbone(g, LengthOperator::sum()), compute_backbone(g, LengthOperator::max())));
}

TEST(Backbone, DrasticKeepsEverythingWithPositiveWeights) {
  const auto g = fixtures::toy();
  EXPECT_EQ(compute_backbone(g, LengthOperator::drastic()).tau(), 1.0);
}

TEST(Backbone, ZeroWeightsAreAllKept) {
  const auto g = fixtures::toy().transform_weights([](double) { return 0.0; });
  for (const auto& op : builtin_operators()) EXPECT_EQ(compute_backbone(g, op).tau(), 1.0);
}

TEST(Backbone, ZeroClosureGivesInfiniteDistortion) {
  const auto g = fixtures::parse("a b 0\nb c 0\na c 2\n");
  const auto c = sp_closure_dijkstra(g, LengthOperator::sum());
  EXPECT_EQ(distortion(g, c, EdgeKey::of(0, 2)), kInfinity);
  EXPECT_EQ(distortion(g, c, EdgeKey::of(0, 1)), 1.0);
}

TEST(Backbone, ToleranceDecidesNearTies) {
  const auto g = fixtures::parse("a b 0.1\nb c 0.2\na c 0.30000000000000004\n");
  // 0.1 + 0.2 rounds to 0.30000000000000004 exactly; move the direct edge up by one ulp.
  const auto bumped = g.transform_weights([](double w) { return w > 0.25 ? std::nextafter(w, 1.0) : w; });
  EXPECT_EQ(compute_backbone(bumped, LengthOperator::sum()).tau(), 1.0);
  EXPECT_NEAR(compute_backbone(bumped, LengthOperator::sum(), {}, 0.0).tau(), 2.0 / 3.0, 1e-15);
}

TEST(Backbone, ForeignClosureIsRejected) {
  const auto g = fixtures::toy();
  const auto other = g.transform_weights([](double w) { return w * 2; });
  EXPECT_THROW(extract_backbone(g, sp_closure_dijkstra(other, LengthOperator::sum())), Error);
  const auto b = compute_backbone(g, LengthOperator::sum());
  EXPECT_THROW(b.subgraph(other), Error);
}

TEST(Backbone, DisconnectedGraphKeepsComponents) {
  const auto g = fixtures::parse("a b 1\nb c 1\na c 5\nx y 3\n");
  const auto b = compute_backbone(g, LengthOperator::sum());
  EXPECT_EQ(connected_components(b.subgraph(g)).count, 2u);
  EXPECT_EQ(b.removed().size(), 1u);
  EXPECT_FALSE(verify_connectivity_and_bridges(g, b).backbone_connected);
}

TEST(Verify, SuiteIsGreenOnRandomGraphs) {
  std::mt19937_64 rng(33);
  VerifyReport report;
  const auto ops = builtin_operators();
  for (int t = 0; t < 30; ++t) {
    RandomGraphSpec spec;
    spec.nodes = 2 + rng() % 10;
    verify_graph(random_graph(spec, rng), "g" + std::to_string(t), ops, report);
  }
  verify_operator_laws(ops, report);
  EXPECT_TRUE(report.passed()) << to_json(report).dump(2);
  EXPECT_GT(report.checks_by_property["nesting"], 0u);
  EXPECT_GT(report.checks_by_property["max_order_invariance"], 0u);
}
