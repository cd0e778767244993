// Copyright 2026 The dronespec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <gtest/gtest.h>

#include <json.hpp>

#include "dronespec/cli.hpp"
#include "dronespec/report.hpp"
#include "fixtures.hpp"

namespace dronespec::cli {
namespace {

namespace fs = std::filesystem;
using testing::ScratchDir;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

void copy_labels_as_predictions(const fs::path& labels, const fs::path& preds) {
  fs::create_directories(preds);
  for (const auto& e : fs::directory_iterator(labels)) {
    std::istringstream in(testing::read_bytes(e.path()));
    std::string out;
    for (std::string line; std::getline(in, line);) out += line + " 0.900000\n";
    testing::write_bytes(preds / e.path().filename(), out);
  }
}

TEST(CliTest, ValidatePrintsCounts) {
  ScratchDir dir("cli_validate");
  const auto manifest = testing::write_synthetic_corpus(dir.path(), 5, 1);
  const auto r = invoke({"validate", "--manifest", manifest.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("images 5"), std::string::npos);
  EXPECT_NE(r.out.find("split test 5"), std::string::npos);
}

TEST(CliTest, ValidateReportsViolations) {
  ScratchDir dir("cli_validate_bad");
  const auto manifest = testing::write_synthetic_corpus(dir.path(), 3, 1);
  testing::write_bytes(dir / "test/labels/img_001.txt", "0 0.5 0.5 0.1\n");
  const auto r = invoke({"validate", "--manifest", manifest.string()});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.err.find("img_001.txt:1"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsageError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsageError);
  const auto missing = invoke({"validate"});
  EXPECT_EQ(missing.code, kExitUsageError);
  EXPECT_NE(missing.err.find("--manifest"), std::string::npos);
  const auto unknown = invoke({"validate", "--manifest", "m.json", "--bogus", "1"});
  EXPECT_EQ(unknown.code, kExitUsageError);
  EXPECT_NE(unknown.err.find("--bogus"), std::string::npos);
  EXPECT_EQ(invoke({"compare", "only=a.json,b.jsonl"}).code, kExitUsageError);
  EXPECT_EQ(invoke({"compare", "a=x.json", "b=y.json,z.jsonl"}).code, kExitUsageError);
  EXPECT_EQ(invoke({"evaluate", "--manifest", "m", "--preds", "p", "--interp", "11"}).code, kExitUsageError);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(CliTest, DomainErrorsCarryModuleErrorNames) {
  ScratchDir dir("cli_domain");
  const auto manifest = testing::write_synthetic_corpus(dir.path(), 2, 1);
  const auto split = invoke({"transform", "--manifest", manifest.string(), "--split", "train", "--modality", "gray",
                             "--out", (dir / "out").string()});
  EXPECT_EQ(split.code, kExitDomainError);
  EXPECT_NE(split.err.find("SplitMissing"), std::string::npos);
  const auto modality = invoke({"transform", "--manifest", manifest.string(), "--modality", "sepia", "--out",
                                (dir / "out").string()});
  EXPECT_EQ(modality.code, kExitDomainError);
  EXPECT_NE(modality.err.find("InvalidParameter"), std::string::npos);
  const auto unreadable = invoke({"validate", "--manifest", (dir / "nope.json").string()});
  EXPECT_EQ(unreadable.code, kExitDomainError);
  EXPECT_NE(unreadable.err.find("ManifestUnreadable"), std::string::npos);
}

TEST(CliTest, TransformIsReproducible) {
  ScratchDir dir("cli_transform");
  const auto manifest = testing::write_synthetic_corpus(dir / "src", 4, 2);
  const auto src_before = testing::snapshot_tree(dir / "src");
  for (const char* workers : {"1", "3"}) {
    const auto r = invoke({"transform", "--manifest", manifest.string(), "--modality", "obscura", "--seed", "42",
                           "--workers", workers, "--out", (dir / ("out" + std::string(workers))).string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  EXPECT_EQ(testing::snapshot_tree(dir / "out1"), testing::snapshot_tree(dir / "out3"));
  EXPECT_EQ(testing::snapshot_tree(dir / "src"), src_before);
}

TEST(CliTest, TransformReadsParamsFile) {
  ScratchDir dir("cli_params");
  const auto manifest = testing::write_synthetic_corpus(dir / "src", 2, 2);
  testing::write_bytes(dir / "params.json", R"({"obscura": {"blur_limit": 7, "fog_coeff": 0.2}})");
  const auto r = invoke({"transform", "--manifest", manifest.string(), "--modality", "obscura", "--params",
                         (dir / "params.json").string(), "--out", (dir / "out").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(testing::read_bytes(dir / "out/transform_report.json"));
  EXPECT_EQ(doc.at("obscura").at("blur_limit"), 7);
  EXPECT_EQ(doc.at("seed"), 20250001u);
}

TEST(CliTest, EvaluateWritesSummary) {
  ScratchDir dir("cli_eval");
  const auto manifest = testing::write_synthetic_corpus(dir / "src", 6, 3);
  copy_labels_as_predictions(dir / "src/test/labels", dir / "preds");
  const auto r = invoke({"evaluate", "--manifest", manifest.string(), "--preds", (dir / "preds").string(), "--out",
                         (dir / "summary.json").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("map50 1.000000"), std::string::npos);
  const auto doc = nlohmann::json::parse(testing::read_bytes(dir / "summary.json"));
  EXPECT_EQ(doc.at("map50"), 1.0);
  EXPECT_EQ(doc.at("f1"), 1.0);
}

TEST(CliTest, EvaluateRejectsUnknownImage) {
  ScratchDir dir("cli_eval_unknown");
  const auto manifest = testing::write_synthetic_corpus(dir / "src", 2, 3);
  testing::write_bytes(dir / "preds/ghost.txt", "0 0.5 0.5 0.1 0.1 0.5\n");
  const auto r = invoke({"evaluate", "--manifest", manifest.string(), "--preds", (dir / "preds").string()});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.err.find("UnknownImageId"), std::string::npos);
}

TEST(CliTest, CompareRanksTableRows) {
  ScratchDir dir("cli_compare");
  struct Row {
    const char* name;
    double map50, map50_95, p, r, f1, pre, inf, post;
  };
  const Row rows[] = {{"Gray Scale", 0.603, 0.374, 0.732, 0.671, 0.700, 0.3, 5.3, 3.0},
                      {"Thermal Vision", 0.680, 0.466, 0.752, 0.623, 0.681, 0.6, 5.2, 3.9},
                      {"Night Vision", 0.701, 0.484, 0.713, 0.662, 0.686, 0.3, 5.3, 4.5},
                      {"ObscuraVision", 0.694, 0.467, 0.624, 0.555, 0.587, 0.6, 5.2, 3.6}};
  std::vector<std::string> args{"compare", "--format", "csv"};
  int i = 0;
  for (const auto& row : rows) {
    const auto s = dir / ("s" + std::to_string(i) + ".json");
    const auto t = dir / ("t" + std::to_string(i) + ".jsonl");
    nlohmann::json doc{{"map50", row.map50}, {"map50_95", row.map50_95}, {"precision", row.p},
                       {"recall", row.r}, {"f1", row.f1}};
    testing::write_bytes(s, doc.dump());
    testing::write_bytes(t, report::format_timing_line({"a", row.pre, row.inf, row.post}) + "\n");
    args.push_back(std::string(row.name) + "=" + s.string() + "," + t.string() + (i == 0 ? ",1.091" : ""));
    ++i;
  }
  const auto r = invoke(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(first.substr(0, first.find(',')), "Night Vision");
  EXPECT_NE(r.out.find("Gray Scale,0.3,5.3,3.0,8.6,0.603,0.374,0.732,0.671,0.700,1.091"), std::string::npos);

  args.push_back("--out");
  args.push_back((dir / "table.csv").string());
  ASSERT_EQ(invoke(args).code, kExitOk);
  EXPECT_EQ(testing::read_bytes(dir / "table.csv"), r.out);
}

TEST(CliTest, RenderWritesAnnotatedImages) {
  ScratchDir dir("cli_render");
  const auto manifest = testing::write_synthetic_corpus(dir / "src", 3, 4);
  const auto r = invoke({"render", "--manifest", manifest.string(), "--out", (dir / "vis").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "vis/img_000.png"));
  EXPECT_TRUE(fs::exists(dir / "vis/img_002.png"));
}

TEST(CliTest, OracleSubcommand) {
  const auto r = invoke({"oracle", "--trials", "50", "--seed", "9"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

}  // namespace
}  // namespace dronespec::cli
