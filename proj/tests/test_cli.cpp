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
#include <sstream>
#include <vector>

#include "distbackbone/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "distbackbone");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = distbackbone::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kToy = std::string(DISTBACKBONE_DATA_DIR) + "/toy.tsv";

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("distbackbone_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(Cli, BackboneWritesOutputs) {
  const auto dir = scratch("backbone");
  const auto r = run({"backbone", kToy, "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tau: 71.4286%"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("avg_closure: 4.9"), std::string::npos);
  EXPECT_EQ(slurp(dir / "backbone.tsv"), slurp(fs::path(DISTBACKBONE_DATA_DIR) / "golden/toy_sum_backbone.tsv"));
  EXPECT_TRUE(fs::exists(dir / "report.json"));
}

TEST(Cli, EdgeOnlyModeAndUltrametric) {
  const auto dir = scratch("edge_only");
  const auto r = run({"backbone", kToy, "--operator", "max", "--mode", "edge-only", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tau: 57.1429%"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("n/a"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"backbone"}).code, 1);
  EXPECT_EQ(run({"backbone", "/nonexistent/file.tsv"}).code, 1);
  EXPECT_EQ(run({"backbone", kToy, "--operator", "hyperbolic"}).code, 1);
  EXPECT_EQ(run({"backbone", kToy, "--node-cap", "3", "--out-dir", scratch("cap").string()}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ParseErrorNamesTheLine) {
  const auto dir = scratch("bad");
  std::ofstream(dir / "bad.tsv") << "a b 1\nb c -4\n";
  const auto r = run({"backbone", (dir / "bad.tsv").string(), "--out-dir", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(Cli, DirectedInputNeedsSymmetrization) {
  const auto dir = scratch("directed");
  std::ofstream(dir / "d.tsv") << "a b 1\nb a 3\nb c 1\n";
  EXPECT_EQ(run({"backbone", (dir / "d.tsv").string(), "--out-dir", dir.string()}).code, 1);
  const auto r = run({"backbone", (dir / "d.tsv").string(), "--symmetrize", "min", "--out-dir", dir.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, CompareAgainstReductions) {
  auto r = run({"compare", kToy, "--against", "mst"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["report"]["changed_pairs"].get<int>(), 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);

  r = run({"compare", kToy, "--against", "threshold", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["report"]["connected"].get<bool>());

  r = run({"compare", kToy, "--against", "backbone", "sum"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["report"]["changed_pairs"].get<int>(), 0);

  EXPECT_EQ(run({"compare", kToy, "--against", "nonsense"}).code, 1);
}

TEST(Cli, VerifyAcceptsGoodBackboneAndRejectsBadOne) {
  const auto dir = scratch("verify");
  ASSERT_EQ(run({"backbone", kToy, "--out-dir", dir.string()}).code, 0);
  auto r = run({"verify", kToy, "--operator", "sum", "--samples", "5", "--backbone", (dir / "backbone.tsv").string()});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["passed"].get<bool>());

  // Drop a backbone edge: the candidate no longer reproduces the closure.
  std::ofstream(dir / "short.tsv") << "u_label\tv_label\td_ij\td_closure\ts\tclass\n"
                                   << "i\tj\t9\t9\t1\ttriangular\n"
                                   << "i\tl\t4\t4\t1\ttriangular\n"
                                   << "l\tk\t4\t4\t1\ttriangular\n"
                                   << "j\tm\t1\t1\t1\ttriangular\n";
  r = run({"verify", kToy, "--operator", "sum", "--samples", "0", "--backbone", (dir / "short.tsv").string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("backbone_file_sufficiency"), std::string::npos) << r.err;
}

TEST(Cli, VerifyRandomCorpus) {
  const auto r = run({"verify", "--samples", "20", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["graphs"].get<int>(), 20);
}

TEST(Cli, HistogramAndClosureExports) {
  const auto dir = scratch("exports");
  auto r = run({"histogram", kToy, "--bins-per-decade", "4", "--out", (dir / "h.tsv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "h.tsv").substr(0, 20), "bin_right_edge\tcount");

  const auto tri = dir / "tri.tsv";
  std::ofstream(tri) << "a b 1\nb c 1\n";
  r = run({"histogram", tri.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("no semi-triangular"), std::string::npos);

  r = run({"closure", kToy, "--format", "binary", "--out", (dir / "c.bin").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fs::file_size(dir / "c.bin"), 32u + 25 * 8);
  r = run({"closure", kToy});
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());
}

TEST(Cli, DatasetsListing) {
  const auto r = run({"datasets"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("net-science"), std::string::npos);
  EXPECT_NE(r.out.find("unavailable"), std::string::npos);
  EXPECT_EQ(run({"datasets", "--fetch", "bogus"}).code, 1);
}
