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
 * @file io.hpp
 * @brief Text and binary formats.
 *
 * Input edge lists are delimiter-separated `source target weight` lines.
 * Blank lines and lines starting with '#' are skipped, and a first data line
 * whose weight field is not a number is taken as a header.
 *
 * Outputs are written so that the same input produces byte-identical files:
 * rows are sorted by EdgeKey and numbers use the shortest round-trip
 * representation.
 */

#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "distbackbone/backbone.hpp"
#include "distbackbone/closure.hpp"
#include "distbackbone/errors.hpp"
#include "distbackbone/graph.hpp"
#include "distbackbone/report.hpp"

namespace distbackbone {

struct EdgeListOptions {
  std::optional<char> delimiter;  // unset: any run of spaces, tabs or commas
  WeightKind weight_kind = WeightKind::distance;
  Symmetrize symmetrize = Symmetrize::none;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line, std::optional<char> delimiter) {
  std::vector<std::string_view> out;
  if (delimiter) {
    std::size_t start = 0;
    for (;;) {
      const auto pos = line.find(*delimiter, start);
      out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return out;
  }
  std::size_t i = 0;
  auto sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && sep(line[i])) ++i;
    const auto start = i;
    while (i < line.size() && !sep(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

/// Shortest representation that parses back to the same double.
inline std::string format_number(double v) {
  if (v == kInfinity) return "inf";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace detail

/// Parses labelled edges without building a graph.
inline std::vector<RawEdge> parse_edge_lines(std::istream& in, const EdgeListOptions& options = {}) {
  std::vector<RawEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = detail::split_fields(text, options.delimiter);
    const bool first = !seen_data;
    seen_data = true;
    if (fields.size() != 3) {
      if (first && fields.size() >= 2) continue;  // header with a different layout
      throw ParseError("expected 3 fields (source, target, weight), found " + std::to_string(fields.size()), line_no);
    }
    const auto weight = detail::parse_number(fields[2]);
    if (!weight) {
      if (first) continue;  // header
      throw ParseError("weight '" + std::string(fields[2]) + "' is not a number", line_no);
    }
    if (fields[0].empty() || fields[1].empty()) throw ParseError("empty node label", line_no);
    edges.push_back({std::string(fields[0]), std::string(fields[1]), *weight, line_no});
  }
  return edges;
}

inline BuildResult parse_edge_list(std::istream& in, const EdgeListOptions& options = {}) {
  const auto raw = parse_edge_lines(in, options);
  if (raw.empty()) throw ParseError("edge list contains no edges");
  return build_distance_graph(raw, options.weight_kind, options.symmetrize);
}

inline BuildResult read_edge_list(const std::filesystem::path& path, const EdgeListOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  try {
    return parse_edge_list(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_edge_list(const DistanceGraph& g, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  out << "source\ttarget\tdistance\n";
  for (const auto& e : g.edges()) {
    out << g.label(e.key.u) << '\t' << g.label(e.key.v) << '\t' << detail::format_number(e.weight) << '\n';
  }
  detail::finish_write(out, path);
}

// ---------------------------------------------------------------------------
// Backbone TSV: u_label, v_label, d_ij, d_closure, s, class.
// ---------------------------------------------------------------------------

inline constexpr std::string_view kBackboneHeader = "u_label\tv_label\td_ij\td_closure\ts\tclass";

/// Kept (triangular) edges only; for them d_closure = d_ij and s = 1.
inline void write_backbone(const DistanceGraph& g, const Backbone& b, std::ostream& out) {
  if (g.fingerprint() != b.parent()) throw Error("backbone was not extracted from this graph");
  out << kBackboneHeader << '\n';
  for (const auto& e : b.kept()) {
    const auto w = detail::format_number(e.weight);
    out << g.label(e.key.u) << '\t' << g.label(e.key.v) << '\t' << w << '\t' << w << "\t1\t"
        << edge_class_name(EdgeClass::triangular) << '\n';
  }
}

inline void write_backbone(const DistanceGraph& g, const Backbone& b, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_backbone(g, b, out);
  detail::finish_write(out, path);
}

/// Semi-triangular edges with their closure values and distortion.
inline void write_removed_edges(const DistanceGraph& g, const Backbone& b, std::ostream& out) {
  if (g.fingerprint() != b.parent()) throw Error("backbone was not extracted from this graph");
  out << kBackboneHeader << '\n';
  for (const auto& r : b.removed()) {
    out << g.label(r.key.u) << '\t' << g.label(r.key.v) << '\t' << detail::format_number(r.distance) << '\t'
        << detail::format_number(r.closure) << '\t' << detail::format_number(r.distortion) << '\t'
        << edge_class_name(EdgeClass::semi_triangular) << '\n';
  }
}

inline void write_removed_edges(const DistanceGraph& g, const Backbone& b, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_removed_edges(g, b, out);
  detail::finish_write(out, path);
}

/// Reads the edges of a backbone TSV as labelled entries.
inline std::vector<RawEdge> read_backbone_edges(std::istream& in) {
  std::vector<RawEdge> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (text == kBackboneHeader) continue;
    const auto fields = detail::split_fields(text, '\t');
    if (fields.size() != 6) throw ParseError("expected 6 tab-separated fields", line_no);
    const auto w = detail::parse_number(fields[2]);
    if (!w) throw ParseError("d_ij '" + std::string(fields[2]) + "' is not a number", line_no);
    out.push_back({std::string(fields[0]), std::string(fields[1]), *w, line_no});
  }
  return out;
}

inline std::vector<RawEdge> read_backbone_edges(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_backbone_edges(in);
}

/// Places labelled edges onto the node set of `base`. Every label must exist
/// in `base`; weights are taken from the entries.
inline DistanceGraph edges_on(const DistanceGraph& base, std::span<const RawEdge> raw) {
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) {
    const auto a = base.find(r.source), b = base.find(r.target);
    if (!a || !b) throw ParseError("unknown node label in '" + r.source + " " + r.target + "'", r.line);
    if (*a == *b) throw ParseError("self-loop", r.line);
    edges.push_back({EdgeKey::of(*a, *b), r.weight});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.key < y.key; });
  edges.erase(std::unique(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.key == y.key; }),
              edges.end());
  return base.with_edges(std::move(edges));
}

// ---------------------------------------------------------------------------
// Reports and histograms.
// ---------------------------------------------------------------------------

inline void write_json(const nlohmann::ordered_json& j, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  out << j.dump(2) << '\n';
  detail::finish_write(out, path);
}

inline void write_report(const SummaryReport& r, const std::filesystem::path& path) { write_json(to_json(r), path); }

/// Two columns: bin right edge, count.
inline void write_histogram(const LogBinnedHistogram& h, std::ostream& out) {
  out << "bin_right_edge\tcount\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    out << detail::format_number(h.right_edges[k]) << '\t' << h.counts[k] << '\n';
  }
}

inline void write_histogram(const LogBinnedHistogram& h, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_histogram(h, out);
  detail::finish_write(out, path);
}

// ---------------------------------------------------------------------------
// Closure export. Binary layout (little-endian):
//   char[8]  magic "DBCLOSR1"
//   u64      n
//   u32      operator kind (0 sum, 1 max, 2 minkowski, 3 product, 4 drastic, 255 custom)
//   u32      reserved (0)
//   f64      operator parameter (Minkowski r, else 0)
//   f64[n*n] row-major closure matrix, +inf for unreachable pairs
// ---------------------------------------------------------------------------

inline constexpr std::array<char, 8> kClosureMagic = {'D', 'B', 'C', 'L', 'O', 'S', 'R', '1'};

struct ClosureFile {
  std::uint64_t n = 0;
  OperatorKind kind = OperatorKind::sum;
  double param = 0.0;
  std::vector<double> values;
};

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<char, sizeof(T)> bytes{};
  if (!in.read(bytes.data(), bytes.size())) throw ParseError("truncated closure file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace detail

inline void write_closure_binary(const ClosureResult& c, const LengthOperator& op, std::ostream& out) {
  if (c.mode() != ClosureMode::full_matrix) throw Error("binary closure export requires a full-matrix closure");
  out.write(kClosureMagic.data(), kClosureMagic.size());
  detail::put_le<std::uint64_t>(out, c.node_count());
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(op.kind()));
  detail::put_le<std::uint32_t>(out, 0);
  detail::put_le<double>(out, op.kind() == OperatorKind::minkowski ? op.param() : 0.0);
  for (double v : c.matrix()) detail::put_le<double>(out, v);
}

inline void write_closure_binary(const ClosureResult& c, const LengthOperator& op,
                                 const std::filesystem::path& path) {
  auto out = detail::open_for_write(path, std::ios::binary);
  write_closure_binary(c, op, out);
  detail::finish_write(out, path);
}

inline ClosureFile read_closure_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kClosureMagic) throw ParseError("not a closure file");
  ClosureFile f;
  f.n = detail::get_le<std::uint64_t>(in);
  f.kind = static_cast<OperatorKind>(detail::get_le<std::uint32_t>(in));
  (void)detail::get_le<std::uint32_t>(in);
  f.param = detail::get_le<double>(in);
  f.values.resize(f.n * f.n);
  for (auto& v : f.values) v = detail::get_le<double>(in);
  return f;
}

/// Pairs i > j as rows (u_label, v_label, d_closure).
inline void write_closure_tsv(const DistanceGraph& g, const ClosureResult& c, std::ostream& out) {
  if (c.mode() != ClosureMode::full_matrix) throw Error("TSV closure export requires a full-matrix closure");
  out << "u_label\tv_label\td_closure\n";
  for (NodeId i = 0; i < c.node_count(); ++i) {
    for (NodeId j = 0; j < i; ++j) {
      out << g.label(i) << '\t' << g.label(j) << '\t' << detail::format_number(c.at(i, j)) << '\n';
    }
  }
}

}  // namespace distbackbone
