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

// Baseline reductions (thresholding, minimum spanning tree), their effect on
// the closure, and the unweighted clustering coefficient.

#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "distbackbone/backbone.hpp"
#include "distbackbone/closure.hpp"
#include "distbackbone/graph.hpp"

namespace distbackbone {

/// Keeps the edges with d_ij < alpha.
inline DistanceGraph threshold_reduce(const DistanceGraph& d, double alpha) {
  if (!(alpha >= 0.0)) throw Error("threshold must be >= 0");
  std::vector<Edge> kept;
  for (const auto& e : d.edges()) {
    if (e.weight < alpha) kept.push_back(e);
  }
  return d.with_edges(std::move(kept));
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

/// Kruskal; equal weights are taken in EdgeKey order.
inline DistanceGraph minimum_spanning_tree(const DistanceGraph& d) {
  if (!is_connected(d)) throw Error("minimum_spanning_tree requires a connected graph");
  std::vector<Edge> order(d.edges().begin(), d.edges().end());
  std::stable_sort(order.begin(), order.end(), [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
  DisjointSets sets(d.node_count());
  std::vector<Edge> tree;
  tree.reserve(d.node_count() > 0 ? d.node_count() - 1 : 0);
  for (const auto& e : order) {
    if (sets.unite(e.key.u, e.key.v)) tree.push_back(e);
  }
  return d.with_edges(std::move(tree));
}

struct ReductionReport {
  bool connected = false;
  std::size_t components = 0;
  std::size_t edges_original = 0;
  std::size_t edges_kept = 0;
  double edges_kept_fraction = 0.0;
  double avg_closure_original = 0.0;  // over pairs reachable in both graphs
  double avg_closure_reduced = 0.0;
  double delta_avg_closure = 0.0;
  std::size_t changed_pairs = 0;      // includes pairs that became unreachable
  std::size_t disconnected_pairs = 0;
};

/// Effect of replacing `original` by `reduced` (an edge subset on the same
/// node set) on the closure under `op`.
inline ReductionReport reduction_report(const DistanceGraph& original, const DistanceGraph& reduced,
                                        const LengthOperator& op, ClosureOptions options = {},
                                        double rel_tol = 1e-9) {
  if (reduced.node_count() != original.node_count()) throw Error("reduced graph has a different node set");
  for (const auto& e : reduced.edges()) {
    if (!original.has_edge(e.key.u, e.key.v)) {
      throw Error("reduced graph has edge " + reduced.label(e.key.u) + "-" + reduced.label(e.key.v) +
                  " that is not in the original");
    }
  }
  options.mode = ClosureMode::full_matrix;
  const auto full = sp_closure_dijkstra(original, op, options);
  const auto part = sp_closure_dijkstra(reduced, op, options);

  ReductionReport r;
  const auto comps = connected_components(reduced);
  r.components = comps.count;
  r.connected = comps.count <= 1;
  r.edges_original = original.edge_count();
  r.edges_kept = reduced.edge_count();
  r.edges_kept_fraction = original.edge_count() == 0
                              ? 1.0
                              : static_cast<double>(reduced.edge_count()) / static_cast<double>(original.edge_count());
  double sum_full = 0.0, sum_part = 0.0;
  std::size_t both = 0;
  const auto n = original.node_count();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < i; ++j) {
      const double x = full.at(i, j), y = part.at(i, j);
      if (!(x == y || nearly_equal(x, y, rel_tol))) ++r.changed_pairs;
      if (x != kInfinity && y == kInfinity) ++r.disconnected_pairs;
      if (x != kInfinity && y != kInfinity) {
        sum_full += x;
        sum_part += y;
        ++both;
      }
    }
  }
  if (both > 0) {
    r.avg_closure_original = sum_full / static_cast<double>(both);
    r.avg_closure_reduced = sum_part / static_cast<double>(both);
  }
  r.delta_avg_closure = r.avg_closure_reduced - r.avg_closure_original;
  return r;
}

/// Watts-Strogatz average clustering, ignoring weights. Nodes of degree < 2
/// contribute 0.
inline double average_clustering_coefficient(const DistanceGraph& g) {
  const auto n = g.node_count();
  if (n == 0) throw Error("clustering coefficient of an empty graph");
  std::vector<std::uint8_t> mark(n, 0);
  double total = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    const auto k = nbrs.size();
    if (k < 2) continue;
    for (const auto& a : nbrs) mark[a.node] = 1;
    std::size_t links = 0;
    for (const auto& a : nbrs) {
      for (const auto& b : g.neighbors(a.node)) {
        if (b.node > a.node && mark[b.node]) ++links;
      }
    }
    for (const auto& a : nbrs) mark[a.node] = 0;
    total += 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
  }
  return total / static_cast<double>(n);
}

}  // namespace distbackbone
