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

TEST(Graph, ToyStructure) {
  const auto g = fixtures::toy();
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_EQ(g.edge_count(), 7u);
  EXPECT_DOUBLE_EQ(density(g), 0.7);
  EXPECT_EQ(g.weight(fixtures::id(g, "j"), fixtures::id(g, "m")), 1.0);
  EXPECT_EQ(g.weight(fixtures::id(g, "i"), fixtures::id(g, "m")), kInfinity);
  EXPECT_EQ(g.weight(2, 2), 0.0);
  EXPECT_EQ(g.degree(fixtures::id(g, "k")), 4u);
  EXPECT_TRUE(is_connected(g));
  EXPECT_TRUE(find_bridges(g).empty());
}

TEST(Graph, DensityOfLargeSparseGraph) {
  // Same node and edge counts as a well-known coauthorship component.
  std::mt19937_64 rng(3);
  const auto g = random_sparse_graph(379, 914, rng);
  EXPECT_NEAR(density(g), 914.0 / (379.0 * 378.0 / 2.0), 1e-15);
  EXPECT_NEAR(density(g), 0.0128, 1e-4);
}

TEST(Graph, RejectsMalformedConstruction) {
  EXPECT_THROW(DistanceGraph({"a", "a"}, {}), Error);
  EXPECT_THROW(DistanceGraph({"a", "b"}, {{EdgeKey{0, 1}, 1.0}}), Error);  // non-canonical
  EXPECT_THROW(DistanceGraph({"a", "b"}, {{EdgeKey::of(0, 1), -1.0}}), Error);
  EXPECT_THROW(DistanceGraph({"a", "b"}, {{EdgeKey::of(0, 1), 1.0}, {EdgeKey::of(1, 0), 2.0}}), Error);
  EXPECT_THROW(EdgeKey::of(3, 3), Error);
  EXPECT_THROW(density(DistanceGraph({"a"}, {})), Error);
}

TEST(Builder, ProximityConversionAndZeros) {
  const std::vector<RawEdge> raw = {{"a", "b", 0.5, 1}, {"b", "c", 1.0, 2}, {"c", "d", 0.0, 3}};
  const auto r = build_distance_graph(raw, WeightKind::proximity);
  EXPECT_EQ(r.graph.node_count(), 4u);  // d registered despite p = 0
  EXPECT_EQ(r.graph.edge_count(), 2u);
  EXPECT_EQ(r.graph.weight(0, 1), 1.0);
  EXPECT_EQ(r.graph.weight(1, 2), 0.0);
  EXPECT_FALSE(is_connected(r.graph));
}

TEST(Builder, ErrorsCarryLineNumbers) {
  const std::vector<RawEdge> neg = {{"a", "b", 1.0, 1}, {"b", "c", -2.0, 7}};
  try {
    build_distance_graph(neg, WeightKind::distance);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
  }
  const std::vector<RawEdge> big = {{"a", "b", 1.5, 4}};
  EXPECT_THROW(build_distance_graph(big, WeightKind::proximity), ParseError);
  const std::vector<RawEdge> nan = {{"a", "b", std::nan(""), 2}};
  EXPECT_THROW(build_distance_graph(nan, WeightKind::distance), ParseError);
}

TEST(Builder, SelfLoopsAndDuplicates) {
  const std::vector<RawEdge> raw = {{"a", "a", 3.0, 1}, {"a", "b", 2.0, 2}, {"b", "a", 5.0, 3}, {"a", "b", 2.0, 4}};
  const auto minr = build_distance_graph(raw, WeightKind::distance, Symmetrize::min);
  EXPECT_EQ(minr.self_loops_dropped, 1u);
  EXPECT_EQ(minr.merge_warnings, 1u);
  EXPECT_EQ(minr.graph.weight(0, 1), 2.0);
  const auto mean = build_distance_graph(raw, WeightKind::distance, Symmetrize::mean);
  EXPECT_EQ(mean.graph.weight(0, 1), 3.0);
  EXPECT_THROW(build_distance_graph(raw, WeightKind::distance, Symmetrize::none), ParseError);

  const std::vector<RawEdge> agree = {{"a", "b", 2.0, 1}, {"b", "a", 2.0, 2}};
  const auto ok = build_distance_graph(agree, WeightKind::distance, Symmetrize::none);
  EXPECT_EQ(ok.merge_warnings, 0u);
  EXPECT_EQ(ok.graph.edge_count(), 1u);
}

TEST(Structure, ComponentsMatchBfsOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    RandomGraphSpec spec;
    spec.nodes = 1 + rng() % 12;
    spec.connected = false;
    spec.extra_edge_probability = 0.15;
    const auto g = random_graph(spec, rng);
    EXPECT_EQ(connected_components(g).count, oracle::bfs_component_count(g));
  }
}

TEST(Structure, BridgesMatchRemovalOracle) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    RandomGraphSpec spec;
    spec.nodes = 2 + rng() % 11;
    spec.connected = t % 2 == 0;
    spec.extra_edge_probability = 0.2;
    const auto g = random_graph(spec, rng);
    EXPECT_EQ(find_bridges(g), oracle::removal_bridges(g));
  }
}

TEST(Structure, LargestComponent) {
  const auto g = fixtures::parse("a b 1\nb c 1\nx y 1\np q 1\nq r 2\n");
  const auto lcc = largest_connected_component(g);
  EXPECT_EQ(lcc.graph.node_count(), 3u);
  EXPECT_EQ(lcc.graph.label(0), "a");  // tie goes to the component with the smallest id
  EXPECT_EQ(lcc.node_map.size(), 3u);
}

TEST(Structure, RemoveEdges) {
  const auto g = fixtures::toy();
  const auto h = remove_edges(g, {fixtures::key(g, "j", "m")});
  EXPECT_EQ(h.edge_count(), 6u);
  EXPECT_FALSE(h.has_edge(fixtures::id(g, "j"), fixtures::id(g, "m")));
  EXPECT_THROW(remove_edges(h, {fixtures::key(g, "j", "m")}), Error);
}

TEST(Proximity, RoundTripThroughGraphs) {
  const auto g = fixtures::toy();
  const auto p = convert_to_proximity(g);
  const auto back = convert_to_distance(p);
  ASSERT_EQ(back.edge_count(), g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) EXPECT_NEAR(back.edges()[e].weight, g.edges()[e].weight, 1e-12);
}

TEST(Fingerprint, DetectsChanges) {
  const auto g = fixtures::toy();
  EXPECT_EQ(g.fingerprint(), fixtures::toy().fingerprint());
  EXPECT_NE(g.fingerprint(), g.transform_weights([](double w) { return w + 1; }).fingerprint());
}
