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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "distbackbone/datasets.hpp"

using namespace distbackbone;
namespace fs = std::filesystem;

namespace {

const fs::path kTestData = fs::path(DISTBACKBONE_DATA_DIR) / "testdata";

fs::path fresh_cache(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("distbackbone_cache_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double weight_of(const std::vector<RawEdge>& edges, const std::string& a, const std::string& b) {
  for (const auto& e : edges) {
    if ((e.source == a && e.target == b) || (e.source == b && e.target == a)) return e.weight;
  }
  return -1.0;
}

}  // namespace

TEST(Registry, KnownAndUnknownNames) {
  EXPECT_EQ(dataset_info("net-science").expected_edges, 914u);
  EXPECT_TRUE(dataset_info("c-elegans").available);
  EXPECT_FALSE(dataset_info("hcn-fine").available);
  try {
    dataset_info("no-such-network");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("net-science"), std::string::npos);
  }
  EXPECT_THROW(dataset_fetch("wikipedia-fact"), Error);
}

TEST(Archives, UnzipAndParseGml) {
  const auto zip = detail::read_file_bytes(kTestData / "tiny_gml.zip");
  const auto text = detail::unzip_member(zip, "tiny.gml");
  const auto arcs = detail::gml_arcs(text);
  EXPECT_EQ(arcs.size(), 5u);
  const auto p = detail::normalize_to_proximity(arcs);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(weight_of(p, "0", "1"), 1.0);  // reciprocal arcs summed: 2 + 2
  EXPECT_EQ(weight_of(p, "0", "2"), 1.0);
  EXPECT_EQ(weight_of(p, "1", "2"), 0.25);
  EXPECT_EQ(weight_of(p, "2", "3"), 0.125);
  EXPECT_THROW(detail::unzip_member(zip, "missing.gml"), Error);
  EXPECT_THROW(detail::unzip_member("not a zip", "x"), Error);
}

TEST(Archives, GunzipContacts) {
  const auto gz = detail::read_file_bytes(kTestData / "tiny_contacts.csv.gz");
  const auto text = detail::inflate_bytes(gz, 16 + MAX_WBITS);
  const auto p = detail::normalize_to_proximity(detail::contact_counts(text));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(weight_of(p, "1", "2"), 1.0);
  EXPECT_DOUBLE_EQ(weight_of(p, "2", "3"), 1.0 / 3.0);
}

TEST(Gml, MalformedInput) {
  EXPECT_THROW(detail::gml_arcs("graph [ edge [ source 1 ] "), ParseError);
  EXPECT_THROW(detail::gml_arcs("graph [ edge [ source 1 ] ]"), ParseError);
  EXPECT_THROW(detail::gml_arcs("nothing [ ]"), ParseError);
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(detail::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Fetch, OfflineCacheNormalizesPinsAndChecksStructure) {
  const auto cache = fresh_cache("fetch");
  FetchOptions fo;
  fo.cache_dir = cache;
  fo.allow_download = false;
  EXPECT_THROW(dataset_fetch("net-science", fo), Error);  // nothing cached, downloads disabled

  fs::create_directories(cache / "net-science");
  fs::copy_file(kTestData / "fake_netscience.zip", cache / "net-science" / "netscience.zip");
  const auto path = dataset_fetch("net-science", fo);
  EXPECT_TRUE(fs::exists(path));
  EXPECT_TRUE(fs::exists(cache / "net-science" / "netscience.zip.sha256"));

  // The synthetic archive is not the real network: the content check refuses it.
  try {
    load_dataset("net-science", fo);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("content check"), std::string::npos);
  }

  // Tampering with the archive after the first fetch breaks the pin.
  std::ofstream(cache / "net-science" / "netscience.zip", std::ios::app) << "x";
  try {
    dataset_fetch("net-science", fo);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("checksum"), std::string::npos);
  }
}
