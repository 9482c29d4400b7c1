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

/**
 * @file backbone.hpp
 * @brief Distance backbone extraction and its structural guarantees.
 *
 * An edge is triangular under g when no indirect path is strictly shorter
 * than the edge itself, i.e. d_ij <= d^T_ij. The triangular edges form the
 * distance backbone, which on its own reproduces the whole closure. Edges
 * that fail the test are semi-triangular; their distortion d_ij / d^T_ij
 * measures by how much.
 *
 * Ties (an indirect path of exactly the edge's length) keep the edge, so the
 * backbone is not necessarily a minimal equivalent subgraph.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "distbackbone/closure.hpp"
#include "distbackbone/errors.hpp"
#include "distbackbone/graph.hpp"

namespace distbackbone {

inline constexpr double kClassificationTolerance = 1e-10;

enum class EdgeClass { triangular, semi_triangular };

inline const char* edge_class_name(EdgeClass c) {
  return c == EdgeClass::triangular ? "triangular" : "semi_triangular";
}

struct RemovedEdge {
  EdgeKey key;
  double distance;    // d_ij
  double closure;     // d^T_ij
  double distortion;  // d_ij / d^T_ij, +inf when d^T_ij == 0
};

class Backbone {
 public:
  Backbone() = default;
  Backbone(GraphFingerprint parent, std::string operator_id, std::vector<Edge> kept, std::vector<RemovedEdge> removed)
      : parent_(parent), operator_id_(std::move(operator_id)), kept_(std::move(kept)), removed_(std::move(removed)) {}

  const GraphFingerprint& parent() const noexcept { return parent_; }
  const std::string& operator_id() const noexcept { return operator_id_; }

  /// Triangular edges with their original weights, in EdgeKey order.
  std::span<const Edge> kept() const noexcept { return kept_; }
  /// Semi-triangular edges, in EdgeKey order.
  std::span<const RemovedEdge> removed() const noexcept { return removed_; }

  std::size_t edge_count() const noexcept { return kept_.size() + removed_.size(); }

  bool keeps(EdgeKey key) const {
    return std::binary_search(kept_.begin(), kept_.end(), Edge{key, 0.0},
                              [](const Edge& a, const Edge& b) { return a.key < b.key; });
  }

  /// The backbone as a graph on the parent's node set.
  DistanceGraph subgraph(const DistanceGraph& parent) const {
    if (parent.fingerprint() != parent_) throw Error("backbone was not extracted from this graph");
    return parent.with_edges(kept_);
  }

  /// Fraction of edges kept.
  double tau() const {
    if (edge_count() == 0) throw Error("tau is undefined for a graph without edges");
    return static_cast<double>(kept_.size()) / static_cast<double>(edge_count());
  }

  /// Fraction of edges removed. Computed as a ratio rather than 1 - tau so
  /// that e.g. 3/7 is the correctly rounded value; tau + sigma still sums to 1.
  double sigma() const {
    if (edge_count() == 0) throw Error("sigma is undefined for a graph without edges");
    return static_cast<double>(removed_.size()) / static_cast<double>(edge_count());
  }

 private:
  GraphFingerprint parent_;
  std::string operator_id_;
  std::vector<Edge> kept_;
  std::vector<RemovedEdge> removed_;
};

namespace detail {

inline void require_same_graph(const DistanceGraph& d, const ClosureResult& c) {
  if (d.fingerprint() != c.fingerprint()) {
    throw Error("closure fingerprint does not match the graph (closure computed from a different graph)");
  }
}

inline double ratio_distortion(double distance, double closure) {
  if (closure == 0.0) return distance == 0.0 ? 1.0 : kInfinity;
  return distance / closure;
}

}  // namespace detail

/// Splits the edges of `d` into triangular (kept) and semi-triangular
/// (removed) under the closure `c`. An edge is kept iff
/// d_ij <= d^T_ij * (1 + tol); tol = 0 gives exact comparison.
inline Backbone extract_backbone(const DistanceGraph& d, const ClosureResult& c,
                                 double tol = kClassificationTolerance) {
  if (!(tol >= 0.0)) throw Error("classification tolerance must be >= 0");
  detail::require_same_graph(d, c);
  std::vector<Edge> kept;
  std::vector<RemovedEdge> removed;
  const auto edges = d.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double closure = c.at_edge(e);
    const double w = edges[e].weight;
    if (w <= closure * (1.0 + tol)) {
      kept.push_back(edges[e]);
    } else {
      removed.push_back({edges[e].key, w, closure, detail::ratio_distortion(w, closure)});
    }
  }
  return Backbone(d.fingerprint(), c.operator_id(), std::move(kept), std::move(removed));
}

inline double tau(const DistanceGraph& d, const ClosureResult& c, double tol = kClassificationTolerance) {
  if (d.edge_count() == 0) throw Error("tau is undefined for a graph without edges");
  return extract_backbone(d, c, tol).tau();
}

inline double sigma(const DistanceGraph& d, const ClosureResult& c, double tol = kClassificationTolerance) {
  if (d.edge_count() == 0) throw Error("sigma is undefined for a graph without edges");
  return extract_backbone(d, c, tol).sigma();
}

/// d_ij / d^T_ij for an existing edge; +inf when the closure is 0 but the
/// edge is not.
inline double distortion(const DistanceGraph& d, const ClosureResult& c, EdgeKey key) {
  detail::require_same_graph(d, c);
  auto idx = d.edge_index(key);
  if (!idx) throw Error("distortion: edge not present in graph");
  return detail::ratio_distortion(d.edges()[*idx].weight, c.at_edge(*idx));
}

struct SufficiencyVerdict {
  bool holds = true;
  std::optional<std::pair<NodeId, NodeId>> witness;  // first differing pair
  double original = 0.0;                              // closure of the graph at the witness
  double from_backbone = 0.0;                         // closure of the backbone at the witness
};

/// Compares two full closures entrywise within a relative tolerance.
inline SufficiencyVerdict compare_closures(const ClosureResult& a, const ClosureResult& b, double rel_tol = 1e-9) {
  if (a.node_count() != b.node_count()) throw Error("closures have different node counts");
  SufficiencyVerdict v;
  const auto n = a.node_count();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < i; ++j) {
      const double x = a.at(i, j), y = b.at(i, j);
      if (x == y || nearly_equal(x, y, rel_tol)) continue;
      v.holds = false;
      v.witness = std::make_pair(i, j);
      v.original = x;
      v.from_backbone = y;
      return v;
    }
  }
  return v;
}

/// True iff the closure of the backbone subgraph equals the closure of `d`.
inline SufficiencyVerdict verify_sufficiency(const DistanceGraph& d, const DistanceGraph& backbone_graph,
                                             const LengthOperator& op, ClosureOptions options = {}) {
  if (backbone_graph.node_count() != d.node_count()) throw Error("backbone has a different node set");
  options.mode = ClosureMode::full_matrix;
  options.keep_witness = false;
  return compare_closures(sp_closure_dijkstra(d, op, options), sp_closure_dijkstra(backbone_graph, op, options));
}

inline SufficiencyVerdict verify_sufficiency(const DistanceGraph& d, const Backbone& b, const LengthOperator& op,
                                             ClosureOptions options = {}) {
  return verify_sufficiency(d, b.subgraph(d), op, options);
}

struct ConnectivityVerdict {
  bool backbone_connected = false;
  bool bridges_kept = false;
  std::vector<EdgeKey> missing_bridges;
};

/// A backbone of a connected graph is connected and keeps every bridge.
inline ConnectivityVerdict verify_connectivity_and_bridges(const DistanceGraph& d, const Backbone& b) {
  ConnectivityVerdict v;
  v.backbone_connected = is_connected(b.subgraph(d));
  for (const auto& key : find_bridges(d)) {
    if (!b.keeps(key)) v.missing_bridges.push_back(key);
  }
  v.bridges_kept = v.missing_bridges.empty();
  return v;
}

/// True iff every edge kept by `smaller` (extracted under the pointwise
/// smaller operator) is also kept by `larger`.
inline bool nesting_check(const Backbone& smaller, const Backbone& larger) {
  if (smaller.parent() != larger.parent()) throw Error("nesting_check: backbones come from different graphs");
  return std::all_of(smaller.kept().begin(), smaller.kept().end(),
                     [&](const Edge& e) { return larger.keeps(e.key); });
}

/// Convenience: closure + extraction in one call.
inline Backbone compute_backbone(const DistanceGraph& d, const LengthOperator& op, ClosureOptions options = {},
                                 double tol = kClassificationTolerance) {
  return extract_backbone(d, sp_closure_dijkstra(d, op, options), tol);
}

}  // namespace distbackbone
