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
 * @file closure.hpp
 * @brief Generalized shortest-path distance closures.
 *
 * The closure of a distance graph under a length operator g holds, for each
 * pair, the minimum over all paths of the g-fold of the path's weights.
 * Two independent routes are provided:
 *
 *   - sp_closure_dijkstra: one label-setting search per source node, with
 *     sources spread over worker threads. This is the production path.
 *   - sp_closure_algebraic: repeated min-g squaring of the dense weight
 *     matrix until a fixpoint. Quadratic memory, cubic time per squaring;
 *     meant as an oracle for small graphs.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <queue>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "distbackbone/algebra.hpp"
#include "distbackbone/errors.hpp"
#include "distbackbone/graph.hpp"

namespace distbackbone {

enum class ClosureMode { full_matrix, edge_only };

inline constexpr std::size_t kDefaultNodeCap = 20000;

struct ClosureOptions {
  ClosureMode mode = ClosureMode::full_matrix;
  std::size_t workers = 0;           // 0: BACKBONE_WORKERS, else hardware threads
  std::size_t node_cap = kDefaultNodeCap;  // full_matrix refused above this
  bool keep_witness = false;         // retain a predecessor per (source, target)
  std::size_t law_samples = 2000;    // law check for custom operators
};

/// Worker count from an explicit request, the BACKBONE_WORKERS environment
/// variable, or the hardware, in that order.
inline std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BACKBONE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

class ClosureResult {
 public:
  static constexpr NodeId kNoWitness = std::numeric_limits<NodeId>::max();

  ClosureMode mode() const noexcept { return mode_; }
  std::size_t node_count() const noexcept { return n_; }
  const std::string& operator_id() const noexcept { return operator_id_; }
  const GraphFingerprint& fingerprint() const noexcept { return fingerprint_; }

  /// d^T_ij. In edge_only mode only pairs adjacent in the source graph (and
  /// the diagonal) are available.
  double at(NodeId i, NodeId j) const {
    if (i >= n_ || j >= n_) throw Error("closure index out of range");
    if (i == j) return 0.0;
    if (mode_ == ClosureMode::full_matrix) return matrix_[static_cast<std::size_t>(i) * n_ + j];
    const auto key = EdgeKey::of(i, j);
    auto it = std::lower_bound(edge_keys_.begin(), edge_keys_.end(), key);
    if (it == edge_keys_.end() || *it != key) throw Error("closure value not retained for a non-edge in edge_only mode");
    return edge_values_[static_cast<std::size_t>(it - edge_keys_.begin())];
  }

  /// Closure value at the e-th edge of the source graph (EdgeKey order).
  double at_edge(std::size_t e) const {
    if (mode_ == ClosureMode::edge_only) return edge_values_.at(e);
    const auto& k = edge_keys_.at(e);
    return matrix_[static_cast<std::size_t>(k.u) * n_ + k.v];
  }

  /// Row-major n x n matrix; empty in edge_only mode.
  std::span<const double> matrix() const noexcept { return matrix_; }

  bool has_witness() const noexcept { return !witness_.empty(); }

  /// Node list of one shortest path from `source` to `target` (inclusive),
  /// empty if unreachable. Requires keep_witness.
  std::vector<NodeId> witness_path(NodeId source, NodeId target) const {
    if (witness_.empty()) throw Error("closure computed without witness retention");
    std::vector<NodeId> path;
    if (source != target && matrix_[static_cast<std::size_t>(source) * n_ + target] == kInfinity) return path;
    for (NodeId v = target; v != kNoWitness; v = witness_[static_cast<std::size_t>(source) * n_ + v]) {
      path.push_back(v);
      if (v == source) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  template <class Op>
  friend ClosureResult dijkstra_closure_impl(const DistanceGraph&, const Op&, const std::string&,
                                             const ClosureOptions&, std::size_t);
  template <class Op>
  friend ClosureResult algebraic_closure_impl(const DistanceGraph&, const Op&, const std::string&, std::size_t*);
  friend ClosureResult make_closure_result(ClosureMode, std::size_t, std::string, GraphFingerprint,
                                           std::vector<double>, std::vector<EdgeKey>);

  ClosureMode mode_ = ClosureMode::full_matrix;
  std::size_t n_ = 0;
  std::string operator_id_;
  GraphFingerprint fingerprint_;
  std::vector<double> matrix_;
  std::vector<EdgeKey> edge_keys_;
  std::vector<double> edge_values_;
  std::vector<NodeId> witness_;
};

/// Assembles a full-matrix result from raw values (used by readers).
inline ClosureResult make_closure_result(ClosureMode mode, std::size_t n, std::string operator_id,
                                         GraphFingerprint fingerprint, std::vector<double> values,
                                         std::vector<EdgeKey> edge_keys) {
  ClosureResult c;
  c.mode_ = mode;
  c.n_ = n;
  c.operator_id_ = std::move(operator_id);
  c.fingerprint_ = fingerprint;
  c.edge_keys_ = std::move(edge_keys);
  if (mode == ClosureMode::full_matrix) {
    if (values.size() != n * n) throw Error("closure matrix size mismatch");
    c.matrix_ = std::move(values);
  } else {
    if (values.size() != c.edge_keys_.size()) throw Error("closure edge value count mismatch");
    c.edge_values_ = std::move(values);
  }
  return c;
}

namespace detail {

/// Single-source search state, reused across sources by one worker.
template <class Op>
class SourceSearch {
 public:
  SourceSearch(const DistanceGraph& g, const Op& op)
      : g_(g), op_(op), dist_(g.node_count(), kInfinity), pred_(g.node_count(), ClosureResult::kNoWitness),
        settled_(g.node_count(), 0) {}

  /// Runs from `source`. With `stop_after_neighbors`, stops once every
  /// neighbor of the source is settled. Returns the distances span (valid
  /// until the next call) and leaves predecessors in pred().
  std::span<const double> run(NodeId source, bool stop_after_neighbors) {
    for (NodeId v : touched_) {
      dist_[v] = kInfinity;
      pred_[v] = ClosureResult::kNoWitness;
      settled_[v] = 0;
    }
    touched_.clear();

    using Item = std::pair<double, NodeId>;  // (length, node) orders ties by node index
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist_[source] = 0.0;
    touched_.push_back(source);
    heap.emplace(0.0, source);
    std::size_t pending = stop_after_neighbors ? g_.degree(source) : 0;

    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (settled_[u] || d > dist_[u]) continue;
      settled_[u] = 1;
      if (stop_after_neighbors && u != source && g_.has_edge(source, u) && --pending == 0) break;
      for (const auto& nb : g_.neighbors(u)) {
        if (settled_[nb.node]) continue;
        const double cand = op_(d, nb.weight);
        if (cand < dist_[nb.node]) {
          if (dist_[nb.node] == kInfinity) touched_.push_back(nb.node);
          dist_[nb.node] = cand;
          pred_[nb.node] = u;
          heap.emplace(cand, nb.node);
        }
      }
    }
    return dist_;
  }

  std::span<const NodeId> pred() const noexcept { return pred_; }

 private:
  const DistanceGraph& g_;
  const Op& op_;
  std::vector<double> dist_;
  std::vector<NodeId> pred_;
  std::vector<std::uint8_t> settled_;
  std::vector<NodeId> touched_;
};

/// Calls `task(worker_index, source)` for every source, spreading sources
/// dynamically over `workers` threads.
template <class Factory>
void for_each_source(std::size_t n, std::size_t workers, Factory&& make_task) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  std::atomic<std::size_t> next{0};
  auto body = [&](std::size_t w) {
    auto task = make_task(w);
    for (std::size_t s = next.fetch_add(1); s < n; s = next.fetch_add(1)) task(static_cast<NodeId>(s));
  };
  if (workers == 1) {
    body(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  for (auto& t : pool) t.join();
}

inline std::vector<EdgeKey> edge_keys_of(const DistanceGraph& g) {
  std::vector<EdgeKey> keys;
  keys.reserve(g.edge_count());
  for (const auto& e : g.edges()) keys.push_back(e.key);
  return keys;
}

inline void require_lawful(const LengthOperator& op, std::size_t samples) {
  if (op.is_builtin()) return;
  const auto report = check_operator_laws(op, std::max<std::size_t>(1, samples), 0x5eed);
  if (!report.passed()) {
    throw Error("operator '" + op.id() + "' violates " + law_name(report.failures.front().law) + ": " +
                report.failures.front().detail);
  }
}

}  // namespace detail

template <class Op>
ClosureResult dijkstra_closure_impl(const DistanceGraph& g, const Op& op, const std::string& id,
                                    const ClosureOptions& options, std::size_t workers) {
  const auto n = g.node_count();
  ClosureResult c;
  c.mode_ = options.mode;
  c.n_ = n;
  c.operator_id_ = id;
  c.fingerprint_ = g.fingerprint();
  c.edge_keys_ = detail::edge_keys_of(g);

  if (options.mode == ClosureMode::full_matrix) {
    c.matrix_.assign(n * n, kInfinity);
    if (options.keep_witness) c.witness_.assign(n * n, ClosureResult::kNoWitness);
    detail::for_each_source(n, workers, [&](std::size_t) {
      return [&, search = std::make_shared<detail::SourceSearch<Op>>(g, op)](NodeId s) {
        auto dist = search->run(s, false);
        // Each source owns row s exclusively.
        std::copy(dist.begin(), dist.end(), c.matrix_.begin() + static_cast<std::ptrdiff_t>(s * n));
        if (options.keep_witness) {
          auto pred = search->pred();
          std::copy(pred.begin(), pred.end(), c.witness_.begin() + static_cast<std::ptrdiff_t>(s * n));
        }
      };
    });
    // Rows are folds from their own source; keep the smaller of the two
    // directions so the matrix is exactly symmetric.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        double& a = c.matrix_[i * n + j];
        double& b = c.matrix_[j * n + i];
        a = b = std::min(a, b);
      }
    }
  } else {
    // One slot per CSR entry: slot of (u -> v) holds the u-rooted value.
    std::vector<double> slot(2 * g.edge_count(), kInfinity);
    std::vector<std::size_t> first(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) first[v + 1] = first[v] + g.degree(v);
    detail::for_each_source(n, workers, [&](std::size_t) {
      return [&, search = std::make_shared<detail::SourceSearch<Op>>(g, op)](NodeId s) {
        auto dist = search->run(s, true);
        auto nbrs = g.neighbors(s);
        for (std::size_t k = 0; k < nbrs.size(); ++k) slot[first[s] + k] = dist[nbrs[k].node];
      };
    });
    c.edge_values_.assign(g.edge_count(), kInfinity);
    for (NodeId v = 0; v < n; ++v) {
      auto nbrs = g.neighbors(v);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        double& val = c.edge_values_[nbrs[k].edge];
        val = std::min(val, slot[first[v] + k]);
      }
    }
  }
  return c;
}

/// Generalized shortest-path closure by per-source label-setting search.
inline ClosureResult sp_closure_dijkstra(const DistanceGraph& g, const LengthOperator& op,
                                         const ClosureOptions& options = {}) {
  detail::require_lawful(op, options.law_samples);
  if (options.mode == ClosureMode::full_matrix && g.node_count() > options.node_cap) {
    throw ResourceCapError("full closure matrix for " + std::to_string(g.node_count()) +
                           " nodes exceeds the node cap of " + std::to_string(options.node_cap) +
                           "; use edge-only mode or raise the cap");
  }
  const auto workers = resolve_workers(options.workers);
  return op.dispatch([&](const auto& concrete) { return dijkstra_closure_impl(g, concrete, op.id(), options, workers); });
}

template <class Op>
ClosureResult algebraic_closure_impl(const DistanceGraph& g, const Op& op, const std::string& id,
                                     std::size_t* squarings) {
  const auto n = g.node_count();
  std::vector<double> cur(n * n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) cur[i * n + i] = 0.0;
  for (const auto& e : g.edges()) {
    cur[static_cast<std::size_t>(e.key.u) * n + e.key.v] = e.weight;
    cur[static_cast<std::size_t>(e.key.v) * n + e.key.u] = e.weight;
  }
  std::vector<double> next(cur.size());
  std::size_t steps = 0;
  // Termination: entries only decrease and take values from a finite set.
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double best = cur[i * n + j];
        for (std::size_t k = 0; k < n; ++k) {
          const double ik = cur[i * n + k];
          if (ik >= best) continue;  // g(ik, kj) >= ik
          best = std::min(best, op(ik, cur[k * n + j]));
        }
        next[i * n + j] = best;
        changed |= best < cur[i * n + j];
      }
    }
    if (!changed) break;
    ++steps;
    cur.swap(next);
  }
  if (squarings) *squarings = steps;
  ClosureResult c;
  c.mode_ = ClosureMode::full_matrix;
  c.n_ = n;
  c.operator_id_ = id;
  c.fingerprint_ = g.fingerprint();
  c.edge_keys_ = detail::edge_keys_of(g);
  c.matrix_ = std::move(cur);
  return c;
}

/// Closure by iterated C <- min(C, C (min,g) C) on the dense matrix.
/// `squarings`, when given, receives the number of squarings that changed C.
inline ClosureResult sp_closure_algebraic(const DistanceGraph& g, const LengthOperator& op,
                                          std::size_t* squarings = nullptr) {
  return op.dispatch([&](const auto& concrete) { return algebraic_closure_impl(g, concrete, op.id(), squarings); });
}

/// Mean closure value over unordered pairs, skipping unreachable pairs.
inline double average_closure_length(const ClosureResult& c) {
  if (c.mode() != ClosureMode::full_matrix) throw Error("average_closure_length requires a full-matrix closure");
  const auto n = c.node_count();
  const auto m = c.matrix();
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double v = m[i * n + j];
      if (v == kInfinity) continue;
      total += v;
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

}  // namespace distbackbone
