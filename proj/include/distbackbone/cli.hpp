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
 * @file cli.hpp
 * @brief The `distbackbone` command-line front end.
 *
 * Subcommands: backbone, compare, verify, histogram, closure, datasets.
 * Exit codes: 0 success, 1 input or usage error, 2 resource cap exceeded,
 * 3 invariant violation (a backbone guarantee failed).
 */

#pragma once

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "distbackbone/datasets.hpp"
#include "distbackbone/distbackbone.hpp"

namespace distbackbone::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kResourceCap = 2, kInvariantViolation = 3 };

struct InputOptions {
  std::string path;
  std::string dataset;
  std::string weight_kind = "distance";
  std::string symmetrize = "none";
  std::string delimiter;
  bool lcc = false;
  std::string cache_dir;
};

struct EngineOptions {
  std::string op = "sum";
  double r = 2.0;
  std::string mode = "full";
  double tol = kClassificationTolerance;
  bool exact = false;
  std::size_t workers = 0;
  std::size_t node_cap = kDefaultNodeCap;

  LengthOperator length_operator() const { return LengthOperator::from_name(op, r); }

  ClosureOptions closure() const {
    ClosureOptions c;
    c.mode = mode == "edge-only" ? ClosureMode::edge_only : ClosureMode::full_matrix;
    c.workers = workers;
    c.node_cap = node_cap;
    return c;
  }

  double tolerance() const { return exact ? 0.0 : tol; }
};

struct LoadedInput {
  std::string name;
  DistanceGraph graph;
  std::size_t merge_warnings = 0;
};

inline void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("input", in.path, "Edge list file (source target weight)");
  cmd.add_option("--dataset", in.dataset, "Registered dataset name instead of a file");
  cmd.add_option("--weight-kind", in.weight_kind, "Meaning of input weights")
      ->check(CLI::IsMember({"distance", "proximity"}));
  cmd.add_option("--symmetrize", in.symmetrize, "Combine reciprocal entries with different weights")
      ->check(CLI::IsMember({"none", "min", "mean"}));
  cmd.add_option("--delimiter", in.delimiter, "Field delimiter (default: whitespace or comma)");
  cmd.add_flag("--lcc", in.lcc, "Keep only the largest connected component");
  cmd.add_option("--cache-dir", in.cache_dir, "Dataset cache (default: $BACKBONE_CACHE_DIR)");
}

inline void add_engine_options(CLI::App& cmd, EngineOptions& e, bool with_mode) {
  cmd.add_option("--operator", e.op, "Path length operator")
      ->check(CLI::IsMember({"sum", "max", "minkowski", "product", "drastic"}));
  cmd.add_option("--r", e.r, "Minkowski exponent (>= 1)");
  if (with_mode) {
    cmd.add_option("--mode", e.mode, "Closure storage")->check(CLI::IsMember({"full", "edge-only"}));
  }
  cmd.add_option("--tol", e.tol, "Relative classification tolerance");
  cmd.add_flag("--exact", e.exact, "Compare without tolerance (integer weights)");
  cmd.add_option("--workers", e.workers, "Worker threads (default: $BACKBONE_WORKERS or all cores)");
  cmd.add_option("--node-cap", e.node_cap, "Largest node count allowed for dense closure storage");
}

inline LoadedInput load_input(const InputOptions& in) {
  LoadedInput out;
  if (!in.dataset.empty()) {
    FetchOptions fo;
    if (!in.cache_dir.empty()) fo.cache_dir = in.cache_dir;
    out.name = in.dataset;
    out.graph = load_dataset(in.dataset, fo).graph;
    return out;
  }
  if (in.path.empty()) throw ParseError("no input: give an edge list file or --dataset NAME");
  EdgeListOptions eo;
  eo.weight_kind = in.weight_kind == "proximity" ? WeightKind::proximity : WeightKind::distance;
  eo.symmetrize = in.symmetrize == "min" ? Symmetrize::min : in.symmetrize == "mean" ? Symmetrize::mean : Symmetrize::none;
  if (!in.delimiter.empty()) eo.delimiter = in.delimiter == "\\t" ? '\t' : in.delimiter.front();
  auto built = read_edge_list(in.path, eo);
  out.name = std::filesystem::path(in.path).stem().string();
  out.merge_warnings = built.merge_warnings;
  out.graph = in.lcc ? largest_connected_component(built.graph).graph : std::move(built.graph);
  return out;
}

inline std::string pct(double fraction) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << 100.0 * fraction << '%';
  return os.str();
}

/// Cheap structural checks run after every extraction.
inline void check_backbone_structure(const DistanceGraph& g, const Backbone& b) {
  const auto bg = b.subgraph(g);
  if (connected_components(bg).count != connected_components(g).count) {
    throw InvariantError("backbone does not preserve the connected components of the graph");
  }
  for (const auto& key : find_bridges(g)) {
    if (!b.keeps(key)) throw InvariantError("bridge " + g.label(key.u) + "-" + g.label(key.v) + " missing from backbone");
  }
  if (b.tau() + b.sigma() != 1.0) throw InvariantError("tau + sigma != 1");
}

inline int cmd_backbone(const InputOptions& in, const EngineOptions& e, const std::string& out_dir, std::ostream& out,
                        std::ostream& err) {
  const auto input = load_input(in);
  if (input.merge_warnings > 0) err << "warning: merged " << input.merge_warnings << " conflicting duplicate pairs\n";
  const auto op = e.length_operator();
  auto co = e.closure();
  if (co.mode == ClosureMode::full_matrix && input.graph.node_count() > co.node_cap) {
    throw ResourceCapError("graph has " + std::to_string(input.graph.node_count()) +
                           " nodes, above the dense node cap " + std::to_string(co.node_cap) +
                           "; rerun with --mode edge-only or a larger --node-cap");
  }
  ReportOptions ro;
  ro.closure = co;
  // edge-only requested: never build dense matrices.
  if (co.mode == ClosureMode::edge_only) ro.closure.node_cap = 0;
  ro.tolerance = e.tolerance();
  auto analysis = analyze(input.name, input.graph, op, ro);
  analysis.report.merge_warnings = input.merge_warnings;
  check_backbone_structure(input.graph, analysis.backbone);

  const std::filesystem::path dir(out_dir);
  write_backbone(input.graph, analysis.backbone, dir / "backbone.tsv");
  write_removed_edges(input.graph, analysis.backbone, dir / "removed_edges.tsv");
  write_report(analysis.report, dir / "report.json");

  out << "graph: " << input.graph.node_count() << " nodes, " << input.graph.edge_count() << " edges\n";
  out << "operator: " << op.id() << '\n';
  out << "tau: " << pct(analysis.backbone.tau()) << '\n';
  out << "sigma: " << pct(analysis.backbone.sigma()) << '\n';
  out << "avg_closure: ";
  if (analysis.report.avg_closure) {
    out << *analysis.report.avg_closure << '\n';
  } else {
    out << "n/a (edge-only mode)\n";
  }
  return kOk;
}

struct CompareOptions {
  std::vector<std::string> against;
  std::string out_file;
};

inline int cmd_compare(const InputOptions& in, const EngineOptions& e, const CompareOptions& c, std::ostream& out,
                       std::ostream& err) {
  const auto input = load_input(in);
  const auto& g = input.graph;
  if (c.against.empty()) throw ParseError("--against requires a method");
  const auto& method = c.against.front();
  auto arg = [&](const char* what) -> const std::string& {
    if (c.against.size() < 2) throw ParseError("--against " + method + " needs " + what);
    return c.against[1];
  };
  DistanceGraph reduced;
  bool is_backbone = false;
  if (method == "threshold") {
    const auto alpha = detail::parse_number(arg("a threshold value"));
    if (!alpha) throw ParseError("threshold must be a number");
    reduced = threshold_reduce(g, *alpha);
  } else if (method == "mst") {
    reduced = minimum_spanning_tree(g);
  } else if (method == "backbone") {
    const auto bop = LengthOperator::from_name(c.against.size() > 1 ? c.against[1] : "sum", e.r);
    auto co = e.closure();
    co.mode = ClosureMode::edge_only;
    reduced = compute_backbone(g, bop, co, e.tolerance()).subgraph(g);
    is_backbone = true;
  } else if (method == "file") {
    reduced = edges_on(g, read_backbone_edges(std::filesystem::path(arg("a backbone TSV path"))));
  } else {
    throw ParseError("unknown --against method '" + method + "' (threshold A | mst | backbone OP | file PATH)");
  }
  const auto report = reduction_report(g, reduced, e.length_operator(), e.closure());
  auto j = to_json(report);
  nlohmann::ordered_json doc;
  doc["input"] = input.name;
  doc["against"] = c.against;
  doc["operator"] = e.length_operator().id();
  doc["report"] = j;
  if (!c.out_file.empty()) write_json(doc, c.out_file);
  out << doc.dump(2) << '\n';
  if (report.changed_pairs > 0 && !is_backbone) {
    err << "warning: reduction changed " << report.changed_pairs << " shortest-path values\n";
  }
  if (!report.connected) err << "warning: reduced graph is disconnected (" << report.components << " components)\n";
  if (is_backbone && report.changed_pairs > 0) {
    throw InvariantError("backbone reduction changed " + std::to_string(report.changed_pairs) + " closure values");
  }
  return kOk;
}

struct VerifyCliOptions {
  std::string op = "all";
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  std::size_t random_nodes = 10;
  std::string backbone_file;
  std::string out_file;
};

inline int cmd_verify(const InputOptions& in, const EngineOptions& e, const VerifyCliOptions& v, std::ostream& out,
                      std::ostream& err) {
  std::vector<LengthOperator> ops;
  if (v.op == "all") {
    ops = builtin_operators();
  } else {
    ops.push_back(LengthOperator::from_name(v.op, e.r));
  }
  VerifyOptions vo;
  vo.seed = v.seed;
  vo.closure = e.closure();
  VerifyReport report;
  verify_operator_laws(ops, report, vo);

  std::optional<LoadedInput> input;
  if (!in.path.empty() || !in.dataset.empty()) {
    input = load_input(in);
    verify_graph(input->graph, input->name, ops, report, vo);
    if (!v.backbone_file.empty()) {
      const auto candidate = edges_on(input->graph, read_backbone_edges(std::filesystem::path(v.backbone_file)));
      for (const auto& op : ops) {
        const auto verdict = verify_sufficiency(input->graph, candidate, op, vo.closure);
        report.record("backbone_file_sufficiency", verdict.holds, v.backbone_file, op.id(),
                      detail::describe_pair(input->graph, verdict));
      }
    }
  } else if (!v.backbone_file.empty()) {
    throw ParseError("--backbone needs the original graph as input");
  }

  std::mt19937_64 rng(v.seed);
  for (std::size_t s = 0; s < v.samples; ++s) {
    RandomGraphSpec spec;
    spec.nodes = 2 + rng() % (v.random_nodes - 1);
    spec.extra_edge_probability = std::uniform_real_distribution<double>(0.05, 0.8)(rng);
    verify_graph(random_graph(spec, rng), "random-" + std::to_string(s), ops, report, vo);
  }

  auto j = to_json(report);
  if (!v.out_file.empty()) write_json(j, v.out_file);
  out << j.dump(2) << '\n';
  if (!report.passed()) {
    const auto& f = report.failures.front();
    err << "property '" << f.property << "' failed on " << f.graph << " (" << f.operator_id << "): " << f.detail
        << '\n';
    return kInvariantViolation;
  }
  return kOk;
}

struct HistogramOptions {
  std::size_t bins_per_decade = 10;
  std::string out_file;
};

inline int cmd_histogram(const InputOptions& in, const EngineOptions& e, const HistogramOptions& h, std::ostream& out,
                         std::ostream& err) {
  const auto input = load_input(in);
  auto co = e.closure();
  co.mode = ClosureMode::edge_only;
  const auto b = compute_backbone(input.graph, e.length_operator(), co, e.tolerance());
  const auto hist = distortion_histogram(b, h.bins_per_decade);
  if (h.out_file.empty()) {
    write_histogram(hist, out);
  } else {
    write_histogram(hist, std::filesystem::path(h.out_file));
  }
  const auto stats = distortion_stats(b);
  if (b.removed().empty()) err << "notice: no semi-triangular edges; histogram is empty\n";
  err << "semi_triangular: " << b.removed().size() << " of " << b.edge_count() << " edges (" << pct(b.sigma())
      << ")\n";
  err << "max_s: " << stats.max << "\nmean_log10_s: " << stats.mean_log10 << "\nsd_log10_s: " << stats.sd_log10
      << '\n';
  if (stats.infinite > 0) err << "infinite_s: " << stats.infinite << '\n';
  return kOk;
}

inline int cmd_closure(const InputOptions& in, const EngineOptions& e, const std::string& format,
                       const std::string& out_file, std::ostream& out) {
  const auto input = load_input(in);
  const auto op = e.length_operator();
  auto co = e.closure();
  co.mode = ClosureMode::full_matrix;
  const auto c = sp_closure_dijkstra(input.graph, op, co);
  if (format == "binary") {
    if (out_file.empty()) throw ParseError("binary closure export needs --out");
    write_closure_binary(c, op, std::filesystem::path(out_file));
  } else if (out_file.empty()) {
    write_closure_tsv(input.graph, c, out);
  } else {
    auto f = detail::open_for_write(out_file);
    write_closure_tsv(input.graph, c, f);
    detail::finish_write(f, out_file);
  }
  return kOk;
}

inline int cmd_datasets(const std::string& fetch, const std::string& cache_dir, std::ostream& out) {
  if (!fetch.empty()) {
    FetchOptions fo;
    if (!cache_dir.empty()) fo.cache_dir = cache_dir;
    out << dataset_fetch(fetch, fo).string() << '\n';
    return kOk;
  }
  for (const auto& d : dataset_registry()) {
    out << std::left << std::setw(22) << d.name << (d.available ? "available  " : "unavailable") << "  " << d.description
        << '\n';
  }
  return kOk;
}

/// Entry point; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Distance backbones of weighted graphs", "distbackbone"};
  app.require_subcommand(1);

  InputOptions in;
  EngineOptions eng;

  auto* backbone = app.add_subcommand("backbone", "Extract the distance backbone and write TSV + JSON report");
  std::string out_dir = "backbone_out";
  add_input_options(*backbone, in);
  add_engine_options(*backbone, eng, true);
  backbone->add_option("--out-dir", out_dir, "Output directory");

  auto* compare = app.add_subcommand("compare", "Compare a reduction's effect on shortest paths");
  CompareOptions cmp;
  add_input_options(*compare, in);
  add_engine_options(*compare, eng, false);
  compare->add_option("--against", cmp.against, "threshold A | mst | backbone OP | file PATH")
      ->required()
      ->expected(1, 2);
  compare->add_option("--out", cmp.out_file, "Also write the JSON report here");

  auto* verify = app.add_subcommand("verify", "Run the backbone property suite");
  VerifyCliOptions ver;
  add_input_options(*verify, in);
  add_engine_options(*verify, eng, false);
  verify->get_option("--operator")->check(CLI::IsMember({"all", "sum", "max", "minkowski", "product", "drastic"}));
  verify->add_option("--samples", ver.samples, "Number of random graphs");
  verify->add_option("--seed", ver.seed, "Random seed");
  verify->add_option("--random-nodes", ver.random_nodes, "Largest random graph size")->check(CLI::Range(2, 64));
  verify->add_option("--backbone", ver.backbone_file, "Backbone TSV to check for sufficiency against the input");
  verify->add_option("--out", ver.out_file, "Also write the JSON verdict here");

  auto* histogram = app.add_subcommand("histogram", "Log-binned distribution of semi-triangular distortion");
  HistogramOptions hist;
  add_input_options(*histogram, in);
  add_engine_options(*histogram, eng, false);
  histogram->add_option("--bins-per-decade", hist.bins_per_decade, "Bins per factor of 10")->check(CLI::PositiveNumber);
  histogram->add_option("--out", hist.out_file, "Output TSV (default: stdout)");

  auto* closure = app.add_subcommand("closure", "Export the full closure matrix");
  std::string format = "tsv", closure_out;
  add_input_options(*closure, in);
  add_engine_options(*closure, eng, false);
  closure->add_option("--format", format, "tsv or binary")->check(CLI::IsMember({"tsv", "binary"}));
  closure->add_option("--out", closure_out, "Output file");

  auto* datasets = app.add_subcommand("datasets", "List registered datasets or fetch one");
  std::string fetch, cache_dir;
  datasets->add_option("--fetch", fetch, "Dataset to download and normalize");
  datasets->add_option("--cache-dir", cache_dir, "Dataset cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  if (verify->parsed() && eng.op == "sum" && verify->count("--operator") == 0) eng.op = "all";
  try {
    if (backbone->parsed()) return cmd_backbone(in, eng, out_dir, out, err);
    if (compare->parsed()) return cmd_compare(in, eng, cmp, out, err);
    if (verify->parsed()) {
      ver.op = eng.op;
      if (eng.op == "all") eng.op = "sum";
      return cmd_verify(in, eng, ver, out, err);
    }
    if (histogram->parsed()) return cmd_histogram(in, eng, hist, out, err);
    if (closure->parsed()) return cmd_closure(in, eng, format, closure_out, out);
    if (datasets->parsed()) return cmd_datasets(fetch, cache_dir, out);
  } catch (const ResourceCapError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace distbackbone::cli
