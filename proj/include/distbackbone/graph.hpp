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
 * @file graph.hpp
 * @brief Symmetric weighted distance graphs and structural queries.
 *
 * A DistanceGraph is immutable once built. Edges are stored once per
 * undirected pair under a canonical EdgeKey (u > v) and mirrored into a CSR
 * adjacency for traversal. Absent pairs have distance +inf, the diagonal is
 * implicitly 0.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "distbackbone/algebra.hpp"
#include "distbackbone/errors.hpp"

namespace distbackbone {

using NodeId = std::uint32_t;

/// Canonical key of an undirected edge: u > v.
struct EdgeKey {
  NodeId u = 0;
  NodeId v = 0;

  static EdgeKey of(NodeId a, NodeId b) {
    if (a == b) throw Error("EdgeKey: self-loop " + std::to_string(a));
    return a > b ? EdgeKey{a, b} : EdgeKey{b, a};
  }

  auto operator<=>(const EdgeKey&) const = default;
};

struct Edge {
  EdgeKey key;
  double weight = 0.0;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  NodeId node;
  double weight;
  std::uint32_t edge;  // index into DistanceGraph::edges()
};

/// Identifies the graph a derived artifact was computed from.
struct GraphFingerprint {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint64_t checksum = 0;

  bool operator==(const GraphFingerprint&) const = default;
};

class DistanceGraph {
 public:
  DistanceGraph() = default;

  /// `edges` must carry canonical keys within [0, labels.size()), no
  /// duplicates, and finite non-negative weights. Order does not matter.
  DistanceGraph(std::vector<std::string> labels, std::vector<Edge> edges)
      : labels_(std::move(labels)), edges_(std::move(edges)) {
    const auto n = labels_.size();
    if (n > std::numeric_limits<NodeId>::max()) throw Error("too many nodes");
    label_index_.reserve(n);
    for (NodeId i = 0; i < n; ++i) {
      if (!label_index_.emplace(labels_[i], i).second) throw Error("duplicate node label '" + labels_[i] + "'");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.key < b.key; });
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& [key, w] = edges_[e];
      if (key.u <= key.v || key.u >= n) throw Error("malformed edge key");
      if (!(w >= 0.0) || !std::isfinite(w)) throw Error("edge weight must be finite and >= 0");
      if (e > 0 && edges_[e - 1].key == key) throw Error("duplicate edge " + labels_[key.u] + "-" + labels_[key.v]);
    }
    build_adjacency();
  }

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Edges sorted by EdgeKey.
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Neighbors of `v`, sorted by node id.
  std::span<const Neighbor> neighbors(NodeId v) const {
    return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
  }

  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::optional<std::size_t> edge_index(EdgeKey key) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                               [](const Edge& e, const EdgeKey& k) { return e.key < k; });
    if (it == edges_.end() || it->key != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  bool has_edge(NodeId a, NodeId b) const { return a != b && edge_index(EdgeKey::of(a, b)).has_value(); }

  /// d_ab: 0 on the diagonal, +inf for absent pairs.
  double weight(NodeId a, NodeId b) const {
    if (a == b) return 0.0;
    auto idx = edge_index(EdgeKey::of(a, b));
    return idx ? edges_[*idx].weight : kInfinity;
  }

  const std::string& label(NodeId v) const { return labels_.at(v); }
  std::span<const std::string> labels() const noexcept { return labels_; }

  std::optional<NodeId> find(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }

  /// FNV-1a over node count and every (u, v, weight bits) in key order.
  GraphFingerprint fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
      }
    };
    mix(labels_.size());
    for (const auto& e : edges_) {
      mix(e.key.u);
      mix(e.key.v);
      mix(std::bit_cast<std::uint64_t>(e.weight));
    }
    return {labels_.size(), edges_.size(), h};
  }

  /// Same node set, different edges.
  DistanceGraph with_edges(std::vector<Edge> edges) const { return DistanceGraph(labels_, std::move(edges)); }

  /// Every weight mapped through `f` (which must keep weights finite and >= 0).
  template <class F>
  DistanceGraph transform_weights(F&& f) const {
    std::vector<Edge> out(edges_);
    for (auto& e : out) e.weight = f(e.weight);
    return with_edges(std::move(out));
  }

 private:
  void build_adjacency() {
    const auto n = labels_.size();
    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.key.u + 1];
      ++offsets_[e.key.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t idx = 0; idx < edges_.size(); ++idx) {
      const auto& e = edges_[idx];
      adjacency_[cursor[e.key.u]++] = {e.key.v, e.weight, idx};
      adjacency_[cursor[e.key.v]++] = {e.key.u, e.weight, idx};
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
                [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> label_index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Dual of a DistanceGraph with weights in (0, 1]; absent pairs have
/// proximity 0 and the diagonal is implicitly 1.
struct ProximityGraph {
  std::vector<std::string> labels;
  std::vector<Edge> edges;  // weight holds the proximity
};

inline ProximityGraph convert_to_proximity(const DistanceGraph& g) {
  ProximityGraph p{std::vector<std::string>(g.labels().begin(), g.labels().end()), {}};
  p.edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) p.edges.push_back({e.key, distance_to_proximity(e.weight)});
  return p;
}

inline DistanceGraph convert_to_distance(const ProximityGraph& p) {
  std::vector<Edge> edges;
  edges.reserve(p.edges.size());
  for (const auto& e : p.edges) {
    if (e.weight == 0.0) continue;
    edges.push_back({e.key, proximity_to_distance(e.weight)});
  }
  return DistanceGraph(p.labels, std::move(edges));
}

// ---------------------------------------------------------------------------
// Construction from labelled edge lists.
// ---------------------------------------------------------------------------

enum class WeightKind { distance, proximity };

/// How entries for the same undirected pair are combined (in distance space).
enum class Symmetrize {
  none,  // reciprocal entries with different weights are rejected as directed input
  min,
  mean,
};

struct RawEdge {
  std::string source;
  std::string target;
  double weight = 0.0;
  std::size_t line = 0;  // 1-based source line, 0 if not from a file
};

struct BuildResult {
  DistanceGraph graph;
  std::size_t merge_warnings = 0;  // pairs whose duplicate entries disagreed
  std::size_t self_loops_dropped = 0;
};

/// Builds a DistanceGraph from labelled entries. Proximities are mapped via
/// d = 1/p - 1 and a proximity of 0 adds the nodes but no edge. Node ids are
/// assigned in order of first appearance.
inline BuildResult build_distance_graph(std::span<const RawEdge> raw, WeightKind kind,
                                        Symmetrize policy = Symmetrize::min) {
  struct Entry {
    double distance;
    bool forward;  // source id > target id
    std::size_t line;
  };
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  BuildResult result;
  std::map<EdgeKey, std::vector<Entry>> grouped;
  for (const auto& r : raw) {
    if (std::isnan(r.weight) || std::isinf(r.weight)) throw ParseError("weight must be finite", r.line);
    if (r.weight < 0.0) throw ParseError("negative weight " + std::to_string(r.weight), r.line);
    if (kind == WeightKind::proximity && r.weight > 1.0) {
      throw ParseError("proximity weight " + std::to_string(r.weight) + " exceeds 1", r.line);
    }
    const NodeId a = intern(r.source);
    const NodeId b = intern(r.target);
    if (a == b) {
      ++result.self_loops_dropped;
      continue;
    }
    if (kind == WeightKind::proximity && r.weight == 0.0) continue;
    const double d = kind == WeightKind::proximity ? proximity_to_distance(r.weight) : r.weight;
    grouped[EdgeKey::of(a, b)].push_back({d, a > b, r.line});
  }

  std::vector<Edge> edges;
  edges.reserve(grouped.size());
  for (const auto& [key, entries] : grouped) {
    double lo = entries.front().distance, hi = lo, total = 0.0;
    for (const auto& e : entries) {
      lo = std::min(lo, e.distance);
      hi = std::max(hi, e.distance);
      total += e.distance;
    }
    if (lo != hi) {
      if (policy == Symmetrize::none) {
        const bool reciprocal = std::any_of(entries.begin(), entries.end(),
                                            [&](const Entry& e) { return e.forward != entries.front().forward; });
        if (reciprocal) {
          throw ParseError("asymmetric weights for pair " + labels[key.u] + "-" + labels[key.v] +
                               " (directed input; choose a symmetrization)",
                           entries.back().line);
        }
      }
      ++result.merge_warnings;
    }
    const double merged = policy == Symmetrize::mean ? total / static_cast<double>(entries.size()) : lo;
    edges.push_back({key, merged});
  }
  result.graph = DistanceGraph(std::move(labels), std::move(edges));
  return result;
}

// ---------------------------------------------------------------------------
// Structural queries.
// ---------------------------------------------------------------------------

struct Components {
  std::vector<std::uint32_t> component;  // per node, numbered by smallest member
  std::size_t count = 0;
};

inline Components connected_components(const DistanceGraph& g) {
  const auto n = g.node_count();
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  Components out{std::vector<std::uint32_t>(n, unset), 0};
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (out.component[s] != unset) continue;
    const auto c = static_cast<std::uint32_t>(out.count++);
    out.component[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(v)) {
        if (out.component[nb.node] == unset) {
          out.component[nb.node] = c;
          stack.push_back(nb.node);
        }
      }
    }
  }
  return out;
}

inline bool is_connected(const DistanceGraph& g) { return connected_components(g).count <= 1; }

struct ComponentExtraction {
  DistanceGraph graph;
  std::vector<NodeId> node_map;  // new id -> id in the source graph
};

/// Largest connected component; ties go to the component holding the
/// smallest node id. Node order is preserved.
inline ComponentExtraction largest_connected_component(const DistanceGraph& g) {
  if (g.node_count() == 0) return {};
  const auto comps = connected_components(g);
  std::vector<std::size_t> sizes(comps.count, 0);
  for (auto c : comps.component) ++sizes[c];
  // Components are numbered in order of their smallest node, so the first
  // maximum wins ties.
  const auto best = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  ComponentExtraction out;
  std::vector<NodeId> remap(g.node_count(), std::numeric_limits<NodeId>::max());
  std::vector<std::string> labels;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (comps.component[v] != best) continue;
    remap[v] = static_cast<NodeId>(out.node_map.size());
    out.node_map.push_back(v);
    labels.push_back(g.label(v));
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (comps.component[e.key.u] == best) edges.push_back({EdgeKey::of(remap[e.key.u], remap[e.key.v]), e.weight});
  }
  out.graph = DistanceGraph(std::move(labels), std::move(edges));
  return out;
}

/// |E| / (n (n - 1) / 2).
inline double density(const DistanceGraph& g) {
  const auto n = static_cast<double>(g.node_count());
  if (g.node_count() < 2) throw Error("density requires at least 2 nodes");
  return static_cast<double>(g.edge_count()) / (n * (n - 1.0) / 2.0);
}

/// Bridges by iterative low-link DFS, returned in EdgeKey order.
inline std::vector<EdgeKey> find_bridges(const DistanceGraph& g) {
  const auto n = g.node_count();
  constexpr auto unvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> order(n, unvisited), low(n, 0);
  std::vector<EdgeKey> bridges;
  struct Frame {
    NodeId node;
    std::uint32_t parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::uint32_t clock = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (order[root] != unvisited) continue;
    order[root] = low[root] = clock++;
    stack.push_back({root, unvisited, 0});
    while (!stack.empty()) {
      auto& f = stack.back();
      auto nbrs = g.neighbors(f.node);
      if (f.next < nbrs.size()) {
        const auto& nb = nbrs[f.next++];
        if (nb.edge == f.parent_edge) continue;
        if (order[nb.node] == unvisited) {
          order[nb.node] = low[nb.node] = clock++;
          stack.push_back({nb.node, nb.edge, 0});
        } else {
          low[f.node] = std::min(low[f.node], order[nb.node]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        const NodeId parent = stack.back().node;
        low[parent] = std::min(low[parent], low[done.node]);
        if (low[done.node] > order[parent]) bridges.push_back(g.edges()[done.parent_edge].key);
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

/// Copy of `g` without `keys`. Throws if a key is not an edge of `g`.
inline DistanceGraph remove_edges(const DistanceGraph& g, std::span<const EdgeKey> keys) {
  std::vector<bool> drop(g.edge_count(), false);
  for (const auto& k : keys) {
    auto idx = g.edge_index(k);
    if (!idx) throw Error("remove_edges: no edge " + std::to_string(k.u) + "-" + std::to_string(k.v));
    drop[*idx] = true;
  }
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (!drop[i]) kept.push_back(g.edges()[i]);
  }
  return g.with_edges(std::move(kept));
}

inline DistanceGraph remove_edges(const DistanceGraph& g, std::initializer_list<EdgeKey> keys) {
  return remove_edges(g, std::span<const EdgeKey>(keys.begin(), keys.size()));
}

}  // namespace distbackbone
