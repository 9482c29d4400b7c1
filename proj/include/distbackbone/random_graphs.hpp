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

// Seeded random graph generators for property suites and benchmarks.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "distbackbone/graph.hpp"

namespace distbackbone {

/// Weights are drawn uniformly from the grid {k / 2^20 : 1 <= k <= 10 * 2^20},
/// i.e. (0, 10] at 2^-20 resolution. Sums of up to 2^32 such values are exact
/// in double precision, so closures computed along different association
/// orders agree bit for bit under sum and max.
inline double draw_grid_weight(std::mt19937_64& rng, double upper = 10.0) {
  constexpr double kScale = 1048576.0;  // 2^20
  const auto top = static_cast<std::uint64_t>(upper * kScale);
  return static_cast<double>(std::uniform_int_distribution<std::uint64_t>(1, top)(rng)) / kScale;
}

struct RandomGraphSpec {
  std::size_t nodes = 10;
  double extra_edge_probability = 0.3;  // per non-tree pair
  bool connected = true;                // start from a random spanning tree
  double max_weight = 10.0;
  bool zero_weights = false;
};

/// Random graph: optionally a random recursive spanning tree, plus each
/// remaining pair independently with the given probability.
inline DistanceGraph random_graph(const RandomGraphSpec& spec, std::mt19937_64& rng) {
  const auto n = spec.nodes;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  std::vector<Edge> edges;
  auto weight = [&] { return spec.zero_weights ? 0.0 : draw_grid_weight(rng, spec.max_weight); };
  auto add = [&](NodeId a, NodeId b) {
    if (a == b || present[a][b]) return;
    present[a][b] = present[b][a] = true;
    edges.push_back({EdgeKey::of(a, b), weight()});
  };
  if (spec.connected) {
    for (NodeId v = 1; v < n; ++v) add(v, static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng)));
  }
  std::bernoulli_distribution extra(spec.extra_edge_probability);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < a; ++b) {
      if (!present[a][b] && extra(rng)) add(a, b);
    }
  }
  return DistanceGraph(std::move(labels), std::move(edges));
}

/// Sparse random graph with exactly `edges` edges (connected through a
/// spanning tree when edges >= nodes - 1). Suitable for large n.
inline DistanceGraph random_sparse_graph(std::size_t nodes, std::size_t edges, std::mt19937_64& rng,
                                         double max_weight = 10.0) {
  if (nodes < 2) throw Error("random_sparse_graph needs at least 2 nodes");
  const auto max_edges = nodes * (nodes - 1) / 2;
  if (edges > max_edges) throw Error("too many edges requested");
  std::vector<std::string> labels;
  labels.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<Edge> out;
  out.reserve(edges);
  std::vector<EdgeKey> keys;
  keys.reserve(edges);
  for (NodeId v = 1; v < nodes && keys.size() < edges; ++v) {
    keys.push_back(EdgeKey::of(v, static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng))));
  }
  std::sort(keys.begin(), keys.end());
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(nodes - 1));
  std::vector<EdgeKey> fresh;
  while (keys.size() < edges) {
    fresh.clear();
    while (fresh.size() < edges - keys.size()) {
      const NodeId a = pick(rng), b = pick(rng);
      if (a != b) fresh.push_back(EdgeKey::of(a, b));
    }
    keys.insert(keys.end(), fresh.begin(), fresh.end());
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  }
  for (const auto& k : keys) out.push_back({k, draw_grid_weight(rng, max_weight)});
  return DistanceGraph(std::move(labels), std::move(out));
}

}  // namespace distbackbone
