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
 * @file report.hpp
 * @brief Summary records and distortion histograms.
 *
 * SummaryReport collects the per-network figures used to compare backbones
 * across datasets: size, density, the relative size of the metric (sum) and
 * ultrametric (max) backbones, mean shortest-path length, clustering of the
 * graph and of both backbones, and statistics of the distortion of
 * semi-triangular edges. Percentages are stored as percentages.
 */

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "distbackbone/backbone.hpp"
#include "distbackbone/closure.hpp"
#include "distbackbone/graph.hpp"
#include "distbackbone/reductions.hpp"

namespace distbackbone {

struct DistortionStats {
  std::size_t count = 0;           // semi-triangular edges with finite distortion
  std::size_t infinite = 0;        // semi-triangular edges with zero closure
  double mean_log10 = 0.0;
  double sd_log10 = 0.0;           // population standard deviation
  double max = 0.0;                // largest finite distortion (0 when count == 0)
};

inline DistortionStats distortion_stats(const Backbone& b) {
  DistortionStats s;
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& r : b.removed()) {
    if (r.distortion == kInfinity) {
      ++s.infinite;
      continue;
    }
    const double l = std::log10(r.distortion);
    sum += l;
    sum_sq += l * l;
    s.max = std::max(s.max, r.distortion);
    ++s.count;
  }
  if (s.count > 0) {
    const double n = static_cast<double>(s.count);
    s.mean_log10 = sum / n;
    s.sd_log10 = std::sqrt(std::max(0.0, sum_sq / n - s.mean_log10 * s.mean_log10));
  }
  return s;
}

/// Geometric bins (rho^k, rho^(k+1)] with rho = 10^(1/bins_per_decade),
/// starting at 1.
struct LogBinnedHistogram {
  std::size_t bins_per_decade = 10;
  std::vector<double> right_edges;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;  // values <= 1 (triangular edges, if passed in)
  std::size_t overflow = 0;   // infinite values

  double ratio() const { return std::pow(10.0, 1.0 / static_cast<double>(bins_per_decade)); }

  std::size_t total() const {
    std::size_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
};

inline LogBinnedHistogram log_binned_histogram(std::span<const double> values, std::size_t bins_per_decade = 10) {
  if (bins_per_decade == 0) throw Error("bins_per_decade must be >= 1");
  LogBinnedHistogram h;
  h.bins_per_decade = bins_per_decade;
  const double per = static_cast<double>(bins_per_decade);
  auto edge = [per](std::size_t k) { return std::pow(10.0, static_cast<double>(k) / per); };

  double hi = 1.0;
  for (double v : values) {
    if (std::isfinite(v)) hi = std::max(hi, v);
  }
  std::size_t bins = 1;
  while (edge(bins) < hi) ++bins;
  for (std::size_t k = 1; k <= bins; ++k) h.right_edges.push_back(edge(k));
  h.counts.assign(bins, 0);

  for (double v : values) {
    if (!(v > 1.0)) {
      ++h.underflow;
      continue;
    }
    if (v == kInfinity) {
      ++h.overflow;
      continue;
    }
    auto k = static_cast<std::size_t>(std::max(0.0, std::ceil(per * std::log10(v)) - 1.0));
    while (k > 0 && v <= edge(k)) --k;
    while (k + 1 < bins && v > edge(k + 1)) ++k;
    ++h.counts[k];
  }
  return h;
}

/// Histogram of the distortion of a backbone's semi-triangular edges.
inline LogBinnedHistogram distortion_histogram(const Backbone& b, std::size_t bins_per_decade = 10) {
  std::vector<double> values;
  values.reserve(b.removed().size());
  for (const auto& r : b.removed()) values.push_back(r.distortion);
  return log_binned_histogram(values, bins_per_decade);
}

struct SummaryReport {
  std::string dataset;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double density_pct = 0.0;
  double tau_metric_pct = 0.0;
  double tau_ultrametric_pct = 0.0;
  double tau_ratio_pct = 0.0;  // tau_u / tau_m
  std::optional<double> avg_closure_metric;  // absent above the dense node cap
  double clustering_graph = 0.0;
  double clustering_metric = 0.0;
  double clustering_ultrametric = 0.0;
  DistortionStats metric_distortion;

  // Backbone under the operator that was requested.
  std::string operator_id;
  double tau_pct = 0.0;
  double sigma_pct = 0.0;
  std::optional<double> avg_closure;
  std::size_t merge_warnings = 0;
};

struct ReportOptions {
  ClosureOptions closure;
  double tolerance = kClassificationTolerance;
};

/// Everything needed to write out one analysis run.
struct Analysis {
  SummaryReport report;
  Backbone backbone;  // under the requested operator
  Backbone metric;
  Backbone ultrametric;
};

inline Analysis analyze(const std::string& name, const DistanceGraph& g, const LengthOperator& op,
                        const ReportOptions& options = {}) {
  if (g.edge_count() == 0) throw Error("graph has no edges");
  const bool dense = g.node_count() <= options.closure.node_cap;
  ClosureOptions co = options.closure;
  co.mode = dense ? ClosureMode::full_matrix : ClosureMode::edge_only;

  auto closure_and_backbone = [&](const LengthOperator& o) {
    auto c = sp_closure_dijkstra(g, o, co);
    auto b = extract_backbone(g, c, options.tolerance);
    return std::make_pair(std::move(c), std::move(b));
  };

  Analysis a;
  auto [metric_closure, metric] = closure_and_backbone(LengthOperator::sum());
  auto ultra = extract_backbone(g, sp_closure_dijkstra(g, LengthOperator::max(), co), options.tolerance);

  SummaryReport& r = a.report;
  r.dataset = name;
  r.nodes = g.node_count();
  r.edges = g.edge_count();
  r.density_pct = g.node_count() >= 2 ? 100.0 * density(g) : 0.0;
  r.tau_metric_pct = 100.0 * metric.tau();
  r.tau_ultrametric_pct = 100.0 * ultra.tau();
  r.tau_ratio_pct = metric.tau() > 0.0 ? 100.0 * ultra.tau() / metric.tau() : 0.0;
  if (dense) r.avg_closure_metric = average_closure_length(metric_closure);
  r.clustering_graph = average_clustering_coefficient(g);
  r.clustering_metric = average_clustering_coefficient(metric.subgraph(g));
  r.clustering_ultrametric = average_clustering_coefficient(ultra.subgraph(g));
  r.metric_distortion = distortion_stats(metric);

  r.operator_id = op.id();
  if (op.kind() == OperatorKind::sum) {
    a.backbone = metric;
    r.avg_closure = r.avg_closure_metric;
  } else {
    auto [c, b] = closure_and_backbone(op);
    a.backbone = std::move(b);
    if (dense) r.avg_closure = average_closure_length(c);
  }
  r.tau_pct = 100.0 * a.backbone.tau();
  r.sigma_pct = 100.0 * a.backbone.sigma();
  a.metric = std::move(metric);
  a.ultrametric = std::move(ultra);
  return a;
}

inline nlohmann::ordered_json to_json(const DistortionStats& s) {
  nlohmann::ordered_json j;
  j["count"] = s.count;
  j["infinite"] = s.infinite;
  j["mean_log10_s"] = s.mean_log10;
  j["sd_log10_s"] = s.sd_log10;
  j["max_s"] = s.max;
  return j;
}

inline nlohmann::ordered_json to_json(const SummaryReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  nlohmann::ordered_json j;
  j["dataset"] = r.dataset;
  j["nodes"] = r.nodes;
  j["edges"] = r.edges;
  j["density_pct"] = r.density_pct;
  j["tau_metric_pct"] = r.tau_metric_pct;
  j["tau_ultrametric_pct"] = r.tau_ultrametric_pct;
  j["tau_ratio_pct"] = r.tau_ratio_pct;
  j["avg_closure_metric"] = opt(r.avg_closure_metric);
  j["clustering"] = nlohmann::ordered_json{{"graph", r.clustering_graph},
                                           {"metric_backbone", r.clustering_metric},
                                           {"ultrametric_backbone", r.clustering_ultrametric}};
  j["metric_distortion"] = to_json(r.metric_distortion);
  j["operator"] = r.operator_id;
  j["tau_pct"] = r.tau_pct;
  j["sigma_pct"] = r.sigma_pct;
  j["avg_closure"] = opt(r.avg_closure);
  j["merge_warnings"] = r.merge_warnings;
  return j;
}

inline nlohmann::ordered_json to_json(const ReductionReport& r) {
  nlohmann::ordered_json j;
  j["connected"] = r.connected;
  j["components"] = r.components;
  j["edges_original"] = r.edges_original;
  j["edges_kept"] = r.edges_kept;
  j["edges_kept_fraction"] = r.edges_kept_fraction;
  j["avg_closure_original"] = r.avg_closure_original;
  j["avg_closure_reduced"] = r.avg_closure_reduced;
  j["delta_avg_closure"] = r.delta_avg_closure;
  j["changed_pairs"] = r.changed_pairs;
  j["disconnected_pairs"] = r.disconnected_pairs;
  return j;
}

}  // namespace distbackbone
