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
 * @file datasets.hpp
 * @brief Registry of public weighted networks and their normalization.
 *
 * Each dataset is fetched once into a cache directory (BACKBONE_CACHE_DIR,
 * default ~/.cache/distbackbone), decoded from its original format and
 * normalized into a proximity edge list:
 *
 *   1. raw weights of the same unordered pair are summed (reciprocal arcs of
 *      directed data, repeated contacts of temporal data);
 *   2. p_ij = w_ij / max w;
 *   3. the result is written as `source target proximity` TSV.
 *
 * Loading then maps p to distance with d = 1/p - 1 and keeps the largest
 * connected component. Content is verified twice: a SHA-256 of the raw file
 * is pinned in the cache on first use and checked afterwards, and the
 * component size must match the registry's expected node and edge counts.
 *
 * Linking: libcurl, zlib and OpenSSL (libcrypto).
 */

#pragma once

#include <curl/curl.h>
#include <openssl/evp.h>
#include <zlib.h>

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "distbackbone/errors.hpp"
#include "distbackbone/graph.hpp"
#include "distbackbone/io.hpp"

namespace distbackbone {

enum class RawFormat {
  gml,           // node [ id label ] / edge [ source target value ]
  weighted_arcs, // whitespace "i j w" lines
  contacts,      // tab separated "t i j ..." temporal contacts, one per line
};

struct DatasetInfo {
  std::string name;
  std::string description;
  std::string url;          // empty for unavailable entries
  std::string raw_file;     // file name of the download inside the cache
  std::string member;       // file inside a zip archive, empty if not zipped
  RawFormat format = RawFormat::gml;
  bool available = true;
  std::string note;         // normalization detail or reason for unavailability
  std::size_t expected_nodes = 0;  // largest connected component
  std::size_t expected_edges = 0;
};

inline const std::vector<DatasetInfo>& dataset_registry() {
  static const std::vector<DatasetInfo> registry = {
      {"net-science", "co-authorship among network scientists (Newman 2006)",
       "http://www-personal.umich.edu/~mejn/netdata/netscience.zip", "netscience.zip", "netscience.gml",
       RawFormat::gml, true, "edge value = co-authorship weight; p = w / max w", 379, 914},
      {"c-elegans", "C. elegans neural network (Watts & Strogatz 1998)",
       "http://www-personal.umich.edu/~mejn/netdata/celegansneural.zip", "celegansneural.zip", "celegansneural.gml",
       RawFormat::gml, true, "directed synapse counts; reciprocal arcs summed; p = w / max w", 297, 2148},
      {"us-airports-500", "500 busiest US airports, 2002 (Colizza et al. 2007)",
       "http://opsahl.co.uk/tnet/datasets/USairport500.txt", "USairport500.txt", "", RawFormat::weighted_arcs, true,
       "seats per route, listed in both directions; reciprocal arcs summed; p = w / max w", 500, 2980},
      {"cond-mat", "cond-mat co-authorship 1995-1999 (Newman 2001)",
       "http://www-personal.umich.edu/~mejn/netdata/cond-mat.zip", "cond-mat.zip", "cond-mat.gml", RawFormat::gml,
       true, "edge value = co-authorship weight; p = w / max w", 13861, 44619},
      {"primary-school", "face-to-face contacts in a Lyon primary school (SocioPatterns)",
       "http://www.sociopatterns.org/wp-content/uploads/2015/09/primaryschool.csv.gz", "primaryschool.csv.gz", "",
       RawFormat::contacts, true, "20 s contact records counted per pair; p = count / max count", 242, 8317},
      {"freeman", "EIES message counts among 32 researchers (Freeman 1979)",
       "http://opsahl.co.uk/tnet/datasets/Freemans_EIES-3_n32.txt", "Freemans_EIES-3_n32.txt", "",
       RawFormat::weighted_arcs, true, "message counts; reciprocal arcs summed; p = w / max w", 32, 266},
      {"high-school", "face-to-face contacts in a US high school (Salathe et al. 2010)", "", "", "", RawFormat::contacts,
       false, "distributed as journal supplementary material only; no stable download", 788, 118291},
      {"us-airports-2006", "US domestic nonstop segments 2006", "", "", "", RawFormat::weighted_arcs, false,
       "reconstruction from BTS T-100 tables; not reproducible from a single public file", 1075, 11973},
      {"hcn-fine", "human connectome, 998-region parcellation", "", "", "", RawFormat::weighted_arcs, false,
       "group-averaged connectivity matrices are not publicly redistributed", 989, 17865},
      {"enterocyte-grn", "enterocyte gene interaction network (STRING)", "", "", "", RawFormat::weighted_arcs, false,
       "gene selection depends on unpublished expression data", 8058, 1689653},
      {"instagram-depression", "Instagram drug co-mention network", "", "", "", RawFormat::weighted_arcs, false,
       "derived from restricted social media timelines", 3288, 230799},
      {"wikipedia-fact", "Wikipedia knowledge graph for fact checking", "", "", "", RawFormat::weighted_arcs, false,
       "3.4M nodes; beyond desk scale", 0, 0},
  };
  return registry;
}

inline const DatasetInfo& dataset_info(const std::string& name) {
  for (const auto& d : dataset_registry()) {
    if (d.name == name) return d;
  }
  std::string names;
  for (const auto& d : dataset_registry()) names += (names.empty() ? "" : ", ") + d.name;
  throw Error("unknown dataset '" + name + "'; registry: " + names);
}

inline std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("BACKBONE_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "distbackbone";
  return std::filesystem::temp_directory_path() / "distbackbone-cache";
}

namespace detail {

inline std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

inline std::string inflate_bytes(std::string_view compressed, int window_bits, std::size_t size_hint = 0) {
  z_stream zs{};
  if (inflateInit2(&zs, window_bits) != Z_OK) throw Error("zlib initialization failed");
  std::unique_ptr<z_stream, int (*)(z_stream*)> guard(&zs, inflateEnd);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  std::string out;
  std::array<char, 1 << 16> buf{};
  int rc = Z_OK;
  out.reserve(size_hint);
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) throw Error("corrupt compressed data");
    out.append(buf.data(), buf.size() - zs.avail_out);
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) throw Error("truncated compressed data");
  }
  return out;
}

inline std::uint32_t le32(std::string_view s, std::size_t at) {
  if (at + 4 > s.size()) throw Error("truncated zip archive");
  return static_cast<std::uint32_t>(static_cast<unsigned char>(s[at])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 3])) << 24;
}

inline std::uint16_t le16(std::string_view s, std::size_t at) {
  if (at + 2 > s.size()) throw Error("truncated zip archive");
  return static_cast<std::uint16_t>(static_cast<unsigned char>(s[at]) |
                                    static_cast<unsigned char>(s[at + 1]) << 8);
}

/// Extracts one member (stored or deflated) from a zip archive via its
/// central directory.
inline std::string unzip_member(std::string_view zip, std::string_view member) {
  constexpr std::uint32_t kEnd = 0x06054b50, kCentral = 0x02014b50, kLocal = 0x04034b50;
  if (zip.size() < 22) throw Error("not a zip archive");
  std::size_t eocd = zip.size() - 22;
  while (le32(zip, eocd) != kEnd) {
    if (eocd == 0 || zip.size() - eocd > 22 + 65535) throw Error("zip end-of-directory record not found");
    --eocd;
  }
  const std::uint16_t entries = le16(zip, eocd + 10);
  std::size_t at = le32(zip, eocd + 16);
  for (std::uint16_t i = 0; i < entries; ++i) {
    if (le32(zip, at) != kCentral) throw Error("corrupt zip central directory");
    const std::uint16_t method = le16(zip, at + 10);
    const std::uint32_t csize = le32(zip, at + 20), usize = le32(zip, at + 24);
    const std::uint16_t name_len = le16(zip, at + 28), extra_len = le16(zip, at + 30), comment_len = le16(zip, at + 32);
    const std::uint32_t local = le32(zip, at + 42);
    const auto name = zip.substr(at + 46, name_len);
    at += 46u + name_len + extra_len + comment_len;
    const auto slash = name.find_last_of('/');
    const auto base = slash == std::string_view::npos ? name : name.substr(slash + 1);
    if (base != member) continue;
    if (le32(zip, local) != kLocal) throw Error("corrupt zip local header");
    const std::size_t data = local + 30u + le16(zip, local + 26) + le16(zip, local + 28);
    if (data + csize > zip.size()) throw Error("truncated zip member");
    const auto payload = zip.substr(data, csize);
    if (method == 0) return std::string(payload);
    if (method == 8) return inflate_bytes(payload, -MAX_WBITS, usize);
    throw Error("unsupported zip compression method " + std::to_string(method));
  }
  throw Error("zip archive has no member '" + std::string(member) + "'");
}

// Minimal GML reader: nested `key value` lists with numbers, quoted strings
// and [ ... ] blocks.
struct GmlNode {
  std::variant<double, std::string, std::vector<std::pair<std::string, GmlNode>>> value;

  const std::vector<std::pair<std::string, GmlNode>>* list() const {
    return std::get_if<std::vector<std::pair<std::string, GmlNode>>>(&value);
  }
  std::optional<double> number(std::string_view key) const {
    if (const auto* l = list()) {
      for (const auto& [k, v] : *l) {
        if (k == key) {
          if (const auto* d = std::get_if<double>(&v.value)) return *d;
        }
      }
    }
    return std::nullopt;
  }
};

class GmlParser {
 public:
  explicit GmlParser(std::string_view text) : s_(text) {}

  std::vector<std::pair<std::string, GmlNode>> parse_list(bool nested) {
    std::vector<std::pair<std::string, GmlNode>> out;
    for (;;) {
      skip_space();
      if (pos_ >= s_.size()) {
        if (nested) throw ParseError("GML: unterminated '['", line_);
        return out;
      }
      if (s_[pos_] == ']') {
        if (!nested) throw ParseError("GML: unexpected ']'", line_);
        ++pos_;
        return out;
      }
      std::string key = word();
      skip_space();
      out.emplace_back(std::move(key), value());
    }
  }

 private:
  void skip_space() {
    while (pos_ < s_.size()) {
      if (s_[pos_] == '\n') ++line_;
      if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
        continue;
      }
      if (!std::isspace(static_cast<unsigned char>(s_[pos_]))) break;
      ++pos_;
    }
  }

  std::string word() {
    const auto start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (pos_ == start) throw ParseError("GML: expected a key", line_);
    return std::string(s_.substr(start, pos_ - start));
  }

  GmlNode value() {
    if (pos_ >= s_.size()) throw ParseError("GML: missing value", line_);
    if (s_[pos_] == '[') {
      ++pos_;
      return GmlNode{parse_list(true)};
    }
    if (s_[pos_] == '"') {
      const auto end = s_.find('"', pos_ + 1);
      if (end == std::string_view::npos) throw ParseError("GML: unterminated string", line_);
      for (auto i = pos_; i < end; ++i) line_ += s_[i] == '\n';
      std::string text(s_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return GmlNode{std::move(text)};
    }
    const auto start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != ']') ++pos_;
    const auto token = s_.substr(start, pos_ - start);
    if (auto v = parse_number(token)) return GmlNode{*v};
    return GmlNode{std::string(token)};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

/// Weighted arcs (source id, target id, weight) from GML text. Edges
/// without a `value` get weight 1.
inline std::vector<RawEdge> gml_arcs(std::string_view text) {
  GmlParser parser(text);
  const auto top = parser.parse_list(false);
  for (const auto& [key, node] : top) {
    if (key != "graph" || !node.list()) continue;
    std::vector<RawEdge> arcs;
    for (const auto& [k, item] : *node.list()) {
      if (k != "edge") continue;
      const auto src = item.number("source"), dst = item.number("target");
      if (!src || !dst) throw ParseError("GML edge without source/target");
      const auto w = item.number("value").value_or(1.0);
      arcs.push_back({std::to_string(static_cast<long long>(*src)), std::to_string(static_cast<long long>(*dst)), w, 0});
    }
    return arcs;
  }
  throw ParseError("GML: no graph block");
}

inline std::vector<RawEdge> whitespace_arcs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_lines(in);
}

/// Counts temporal contact records "t i j ..." per unordered pair.
inline std::vector<RawEdge> contact_counts(std::string_view text) {
  std::vector<RawEdge> arcs;
  std::size_t line_no = 0, start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_fields(line, std::nullopt);
    if (f.size() < 3) throw ParseError("contact record needs at least 3 fields", line_no);
    arcs.push_back({std::string(f[1]), std::string(f[2]), 1.0, line_no});
  }
  return arcs;
}

/// Sums raw weights per unordered pair and rescales to (0, 1].
inline std::vector<RawEdge> normalize_to_proximity(std::span<const RawEdge> arcs) {
  std::map<std::pair<std::string, std::string>, double> total;
  for (const auto& a : arcs) {
    if (a.source == a.target) continue;
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) throw ParseError("invalid raw weight", a.line);
    auto key = a.source < a.target ? std::make_pair(a.source, a.target) : std::make_pair(a.target, a.source);
    total[key] += a.weight;
  }
  double hi = 0.0;
  for (const auto& [k, w] : total) hi = std::max(hi, w);
  if (hi <= 0.0) throw Error("dataset has no positive weights");
  std::vector<RawEdge> out;
  out.reserve(total.size());
  for (const auto& [k, w] : total) {
    if (w > 0.0) out.push_back({k.first, k.second, w / hi, 0});
  }
  return out;
}

inline std::size_t curl_write(char* ptr, std::size_t size, std::size_t nmemb, void* user) {
  static_cast<std::string*>(user)->append(ptr, size * nmemb);
  return size * nmemb;
}

inline std::string download(const std::string& url) {
  std::unique_ptr<CURL, void (*)(CURL*)> curl(curl_easy_init(), curl_easy_cleanup);
  if (!curl) throw Error("libcurl initialization failed");
  std::string body;
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 20L);
  curl_easy_setopt(curl.get(), CURLOPT_TIMEOUT, 300L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, &curl_write);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
  const auto rc = curl_easy_perform(curl.get());
  if (rc != CURLE_OK) throw Error("download of " + url + " failed: " + curl_easy_strerror(rc));
  return body;
}

}  // namespace detail

struct FetchOptions {
  std::filesystem::path cache_dir = default_cache_dir();
  bool allow_download = true;
};

/// Returns the path of the dataset's normalized proximity edge list,
/// producing it from the cached (or freshly downloaded) raw file.
inline std::filesystem::path dataset_fetch(const std::string& name, const FetchOptions& options = {}) {
  const auto& info = dataset_info(name);
  if (!info.available) throw Error("dataset '" + name + "' is not publicly obtainable: " + info.note);
  const auto dir = options.cache_dir / info.name;
  std::filesystem::create_directories(dir);
  const auto normalized = dir / "normalized.tsv";

  // An extracted member placed by hand is accepted in place of the archive.
  auto raw_path = dir / info.raw_file;
  if (!info.member.empty() && !std::filesystem::exists(raw_path) && std::filesystem::exists(dir / info.member)) {
    raw_path = dir / info.member;
  }
  if (!std::filesystem::exists(raw_path)) {
    if (!options.allow_download) throw Error("dataset '" + name + "' is not cached at " + raw_path.string());
    std::string body;
    try {
      body = detail::download(info.url);
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + "; place the file at " + raw_path.string() + " to use it offline");
    }
    const auto tmp = raw_path.string() + ".part";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(body.data(), static_cast<std::streamsize>(body.size()));
      if (!out) throw Error("cannot write " + tmp);
    }
    std::filesystem::rename(tmp, raw_path);
  }

  const auto bytes = detail::read_file_bytes(raw_path);
  const auto digest = detail::sha256_hex(bytes);
  const auto pin = std::filesystem::path(raw_path.string() + ".sha256");
  if (std::filesystem::exists(pin)) {
    const auto pinned = std::string(detail::trim(detail::read_file_bytes(pin)));
    if (pinned != digest) {
      throw Error("checksum mismatch for " + raw_path.string() + ": expected " + pinned + ", got " + digest);
    }
  }

  std::string text;
  if (raw_path.extension() == ".zip") {
    text = detail::unzip_member(bytes, info.member);
  } else if (raw_path.extension() == ".gz") {
    text = detail::inflate_bytes(bytes, 16 + MAX_WBITS);
  } else {
    text = bytes;
  }
  std::vector<RawEdge> arcs;
  switch (info.format) {
    case RawFormat::gml: arcs = detail::gml_arcs(text); break;
    case RawFormat::weighted_arcs: arcs = detail::whitespace_arcs(text); break;
    case RawFormat::contacts: arcs = detail::contact_counts(text); break;
  }
  const auto proximities = detail::normalize_to_proximity(arcs);
  auto out = detail::open_for_write(normalized);
  out << "# " << info.name << ": " << info.note << "\n# raw sha256 " << digest << '\n';
  for (const auto& e : proximities) out << e.source << '\t' << e.target << '\t' << detail::format_number(e.weight) << '\n';
  detail::finish_write(out, normalized);

  if (!std::filesystem::exists(pin)) {
    std::ofstream(pin) << digest << '\n';
  }
  return normalized;
}

struct LoadedDataset {
  DistanceGraph graph;  // largest connected component
  std::size_t raw_nodes = 0;
  std::size_t raw_edges = 0;
};

/// Fetches, normalizes and reduces a dataset to its largest connected
/// component, verifying the component against the registry.
inline LoadedDataset load_dataset(const std::string& name, const FetchOptions& options = {}) {
  const auto& info = dataset_info(name);
  const auto path = dataset_fetch(name, options);
  EdgeListOptions eo;
  eo.weight_kind = WeightKind::proximity;
  eo.symmetrize = Symmetrize::min;
  const auto built = read_edge_list(path, eo);
  LoadedDataset d;
  d.raw_nodes = built.graph.node_count();
  d.raw_edges = built.graph.edge_count();
  d.graph = largest_connected_component(built.graph).graph;
  if (info.expected_nodes != 0 &&
      (d.graph.node_count() != info.expected_nodes || d.graph.edge_count() != info.expected_edges)) {
    throw Error("dataset '" + name + "' content check failed: largest component has " +
                std::to_string(d.graph.node_count()) + " nodes / " + std::to_string(d.graph.edge_count()) +
                " edges, expected " + std::to_string(info.expected_nodes) + " / " +
                std::to_string(info.expected_edges));
  }
  return d;
}

}  // namespace distbackbone
