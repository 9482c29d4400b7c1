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
 * @file verify.hpp
 * @brief Executable checks of the backbone guarantees on concrete graphs.
 *
 * For each graph and operator the suite checks that
 *   - the label-setting closure agrees with the algebraic one (small graphs),
 *   - the backbone alone reproduces the closure,
 *   - the backbone has the same connected components as the graph,
 *   - every bridge is kept,
 *   - tau + sigma == 1,
 * and across operators that backbones nest along max <= minkowski <= sum <=
 * product <= drastic. It also checks that the max backbone is unchanged by
 * strictly increasing weight transforms, that the sum backbone is unchanged
 * by positive scaling, and that a graph whose weights are all 0 is its own
 * backbone.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "distbackbone/algebra.hpp"
#include "distbackbone/backbone.hpp"
#include "distbackbone/closure.hpp"
#include "distbackbone/graph.hpp"

namespace distbackbone {

struct PropertyFailure {
  std::string property;
  std::string graph;
  std::string operator_id;
  std::string detail;
};

struct VerifyReport {
  std::size_t graphs = 0;
  std::size_t checks = 0;
  std::vector<PropertyFailure> failures;
  std::map<std::string, std::size_t> checks_by_property;

  bool passed() const noexcept { return failures.empty(); }

  void record(const std::string& property, bool ok, const std::string& graph, const std::string& op,
              const std::string& detail = {}) {
    ++checks;
    ++checks_by_property[property];
    if (!ok) failures.push_back({property, graph, op, detail});
  }
};

struct VerifyOptions {
  std::size_t oracle_node_limit = 64;  // algebraic cross-check up to this size
  std::size_t law_samples = 2000;
  std::uint64_t seed = 1;
  ClosureOptions closure;
};

namespace detail {

inline std::string describe_pair(const DistanceGraph& g, const SufficiencyVerdict& v) {
  if (!v.witness) return {};
  std::ostringstream os;
  os.precision(17);
  os << "pair (" << g.label(v.witness->first) << ", " << g.label(v.witness->second) << "): closure " << v.original
     << " vs " << v.from_backbone;
  return os.str();
}

inline int chain_rank(const LengthOperator& op) {
  switch (op.kind()) {
    case OperatorKind::max: return 0;
    case OperatorKind::minkowski: return 1;
    case OperatorKind::sum: return 2;
    case OperatorKind::product: return 3;
    case OperatorKind::drastic: return 4;
    case OperatorKind::custom: break;
  }
  return -1;
}

inline std::vector<EdgeKey> kept_keys(const Backbone& b) {
  std::vector<EdgeKey> keys;
  for (const auto& e : b.kept()) keys.push_back(e.key);
  return keys;
}

}  // namespace detail

/// Runs every per-graph property for each operator in `ops`.
inline void verify_graph(const DistanceGraph& g, const std::string& name, std::span<const LengthOperator> ops,
                         VerifyReport& report, const VerifyOptions& options = {}) {
  ++report.graphs;
  ClosureOptions full = options.closure;
  full.mode = ClosureMode::full_matrix;
  const auto components = connected_components(g).count;

  std::vector<std::pair<int, Backbone>> chain;
  for (const auto& op : ops) {
    const auto closure = sp_closure_dijkstra(g, op, full);

    if (g.node_count() <= options.oracle_node_limit) {
      const bool exact = op.kind() == OperatorKind::sum || op.kind() == OperatorKind::max ||
                         op.kind() == OperatorKind::drastic;
      const auto oracle = sp_closure_algebraic(g, op);
      const auto cmp = compare_closures(closure, oracle, exact ? 0.0 : 1e-9);
      report.record("closure_equivalence", cmp.holds, name, op.id(), detail::describe_pair(g, cmp));
    }

    if (g.edge_count() == 0) continue;
    const auto b = extract_backbone(g, closure);
    report.record("tau_plus_sigma", b.tau() + b.sigma() == 1.0, name, op.id());

    const auto backbone_graph = b.subgraph(g);
    const auto suff = compare_closures(closure, sp_closure_dijkstra(backbone_graph, op, full));
    report.record("sufficiency", suff.holds, name, op.id(), detail::describe_pair(g, suff));

    const auto bb_components = connected_components(backbone_graph).count;
    report.record("connectivity", bb_components == components, name, op.id(),
                  "graph has " + std::to_string(components) + " components, backbone " + std::to_string(bb_components));

    std::string missing;
    for (const auto& key : find_bridges(g)) {
      if (!b.keeps(key)) missing += " " + g.label(key.u) + "-" + g.label(key.v);
    }
    report.record("bridges_kept", missing.empty(), name, op.id(), missing.empty() ? "" : "missing bridges:" + missing);

    if (op.kind() == OperatorKind::max) {
      const auto base = detail::kept_keys(b);
      const std::vector<std::pair<std::string, std::function<double(double)>>> transforms = {
          {"cube", [](double w) { return w * w * w; }},
          {"sqrt", [](double w) { return std::sqrt(w); }},
          {"log1p", [](double w) { return std::log1p(w); }},
          {"affine", [](double w) { return 3.0 * w + 0.5; }},
      };
      for (const auto& [tname, f] : transforms) {
        const auto tg = g.transform_weights(f);
        const auto tb = compute_backbone(tg, op, full);
        report.record("max_order_invariance", detail::kept_keys(tb) == base, name, op.id(), "transform " + tname);
      }
    }
    if (op.kind() == OperatorKind::sum) {
      const auto base = detail::kept_keys(b);
      for (double lambda : {0.5, 3.0, 1e-3, 7.25}) {
        const auto sg = g.transform_weights([lambda](double w) { return lambda * w; });
        const auto sb = compute_backbone(sg, op, full);
        report.record("sum_scale_invariance", detail::kept_keys(sb) == base, name, op.id(),
                      "lambda " + std::to_string(lambda));
      }
    }
    if (detail::chain_rank(op) >= 0) chain.emplace_back(detail::chain_rank(op), b);
  }

  std::sort(chain.begin(), chain.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < chain.size(); ++i) {
    report.record("nesting", nesting_check(chain[i - 1].second, chain[i].second), name,
                  chain[i - 1].second.operator_id() + " within " + chain[i].second.operator_id());
  }

  // All-zero weights: every edge is triangular under every operator.
  if (g.edge_count() > 0) {
    const auto zero = g.transform_weights([](double) { return 0.0; });
    for (const auto& op : ops) {
      const auto b = compute_backbone(zero, op, full);
      report.record("zero_weight_whole_graph", b.removed().empty(), name, op.id());
    }
  }
}

inline void verify_operator_laws(std::span<const LengthOperator> ops, VerifyReport& report,
                                 const VerifyOptions& options = {}) {
  for (const auto& op : ops) {
    const auto laws = check_operator_laws(op, options.law_samples, options.seed);
    std::string detail;
    for (const auto& f : laws.failures) detail += std::string(law_name(f.law)) + ": " + f.detail + "; ";
    report.record("operator_laws", laws.passed(), "-", op.id(), detail);
  }
}

inline nlohmann::ordered_json to_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["passed"] = r.passed();
  j["graphs"] = r.graphs;
  j["checks"] = r.checks;
  nlohmann::ordered_json by = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.checks_by_property) by[k] = v;
  j["checks_by_property"] = by;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"property", f.property}, {"graph", f.graph}, {"operator", f.operator_id}, {"detail", f.detail}});
  }
  j["failures"] = failures;
  return j;
}

}  // namespace distbackbone
