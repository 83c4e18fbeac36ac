/*
 * Copyright (c) 2026, The scd-axes Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "scdaxes/scdaxes.hpp"
#include "scdaxes/synthkit.hpp"
#include "test_support.hpp"

namespace scdaxes {
namespace {

using nlohmann::json;
using testing::read_file;
using testing::TempDir;
using testing::write_file;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string p(const std::filesystem::path& path) { return path.string(); }

class CliTest : public ::testing::Test {
 protected:
  TempDir tmp;

  void synth_pairs(std::vector<std::string> extra = {}) {
    std::vector<std::string> args = {"synth", "pairs", "--out", p(tmp / "pairs"), "--instances",
                                     "120"};
    args.insert(args.end(), extra.begin(), extra.end());
    ASSERT_EQ(cli(args).code, 0);
  }
  void synth_temporal() {
    ASSERT_EQ(cli({"synth", "temporal", "--out", p(tmp / "temporal")}).code, 0);
  }
};

TEST_F(CliTest, FitPcaOnDiagonalLine) {
  const auto store = testing::make_store({"a", "b", "c"}, {{0, 0}, {1, 1}, {2, 2}});
  save_store(store, tmp / "store");
  const auto r = cli({"fit", p(tmp / "store"), "--method", "pca", "--out", p(tmp / "t")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(read_file(tmp / "t/transform.json"));
  ASSERT_EQ(j["axis_scores"].size(), 2u);
  EXPECT_NEAR(j["axis_scores"][0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["axis_scores"][1].get<double>(), 0.0, 1e-12);
  EXPECT_NE(r.out.find("axis_scores"), std::string::npos);
}

TEST_F(CliTest, FitRawIsIdentity) {
  synth_pairs();
  ASSERT_EQ(cli({"fit", p(tmp / "pairs/store"), "--method", "raw", "--out", p(tmp / "t")}).code,
            0);
  const auto t = load_transform(tmp / "t");
  EXPECT_EQ(t.kind, TransformKind::Raw);
  EXPECT_EQ(t.components, Eigen::MatrixXd::Identity(64, 64));
}

TEST_F(CliTest, FitIcaIsDeterministic) {
  synth_pairs();
  for (const char* dir : {"a", "b"}) {
    ASSERT_EQ(cli({"fit", p(tmp / "pairs/store"), "--method", "ica", "--seed", "7", "--out",
                   p(tmp / dir)})
                  .code,
              0);
  }
  for (const char* f : {"transform.json", "components.f64", "mean.f64"}) {
    EXPECT_EQ(read_file(tmp / "a" / f), read_file(tmp / "b" / f)) << f;
  }
  EXPECT_EQ(json::parse(read_file(tmp / "a/transform.json"))["seed"], 7);
}

TEST_F(CliTest, FitOnReferencedRows) {
  synth_pairs();
  PairDataset few = load_pairs(tmp / "pairs/pairs.jsonl");
  few.instances.resize(10);
  save_pairs(few, tmp / "few.jsonl");
  ASSERT_EQ(cli({"fit", p(tmp / "pairs/store"), "--pairs", p(tmp / "few.jsonl"), "--out",
                 p(tmp / "t")})
                .code,
            0);
  EXPECT_EQ(load_transform(tmp / "t").fitted_on, 20u);
}

TEST_F(CliTest, EvalWicReportShape) {
  synth_pairs();
  ASSERT_EQ(cli({"fit", p(tmp / "pairs/store"), "--out", p(tmp / "pca")}).code, 0);
  const auto r = cli({"eval-wic", p(tmp / "pairs/store"), p(tmp / "pairs/pairs.jsonl"),
                      p(tmp / "pca"), "--report", p(tmp / "r.json"), "--roc-csv",
                      p(tmp / "roc")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(read_file(tmp / "r.json"));
  EXPECT_EQ(j["fractions"], json({0.05, 0.1, 0.2, 0.5, 1.0}));
  ASSERT_EQ(j["results"].size(), 6u);
  EXPECT_EQ(j["results"][0]["method"], "raw");
  EXPECT_EQ(j["results"][0]["fraction"], 1.0);
  EXPECT_EQ(j["results"][2]["n_axes"], 6);
  EXPECT_EQ(j["transform"]["kind"], "pca");
  EXPECT_EQ(j["inputs"]["store_sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(j["tool"], "scd-axes");
  EXPECT_FALSE(j.contains("timings_ms"));
  EXPECT_TRUE(std::filesystem::exists(tmp / "roc/raw_1.csv"));
  EXPECT_TRUE(std::filesystem::exists(tmp / "roc/pca_0.05.csv"));
  EXPECT_EQ(read_file(tmp / "roc/raw_1.csv").rfind("threshold,fpr,tpr\n", 0), 0u);
}

TEST_F(CliTest, EvalWicNoiselessIsPerfect) {
  synth_pairs({"--sigma", "1e-9", "--strength", "1"});
  ASSERT_EQ(cli({"fit", p(tmp / "pairs/store"), "--out", p(tmp / "pca")}).code, 0);
  ASSERT_EQ(cli({"eval-wic", p(tmp / "pairs/store"), p(tmp / "pairs/pairs.jsonl"),
                 p(tmp / "pca"), "--report", p(tmp / "r.json")})
                .code,
            0);
  for (const auto& row : json::parse(read_file(tmp / "r.json"))["results"]) {
    EXPECT_EQ(row["auc"], 1.0) << row.dump();
  }
}

TEST_F(CliTest, EvalWicIsByteDeterministic) {
  synth_pairs();
  ASSERT_EQ(cli({"fit", p(tmp / "pairs/store"), "--method", "ica", "--out", p(tmp / "ica")}).code,
            0);
  for (const char* name : {"a.json", "b.json"}) {
    ASSERT_EQ(cli({"eval-wic", p(tmp / "pairs/store"), p(tmp / "pairs/pairs.jsonl"),
                   p(tmp / "ica"), "--report", p(tmp / name)})
                  .code,
              0);
  }
  EXPECT_EQ(read_file(tmp / "a.json"), read_file(tmp / "b.json"));

  ASSERT_EQ(cli({"eval-wic", p(tmp / "pairs/store"), p(tmp / "pairs/pairs.jsonl"), "raw",
                 "--report", p(tmp / "t.json"), "--timings"})
                .code,
            0);
  EXPECT_TRUE(json::parse(read_file(tmp / "t.json")).contains("timings_ms"));
}

TEST_F(CliTest, EvalWicSingleClassExitsTwo) {
  synth_pairs();
  PairDataset pairs = load_pairs(tmp / "pairs/pairs.jsonl");
  std::erase_if(pairs.instances, [](const auto& i) { return !i.label; });
  save_pairs(pairs, tmp / "same.jsonl");
  const auto r = cli({"eval-wic", p(tmp / "pairs/store"), p(tmp / "same.jsonl"), "raw"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, EvalTemporal) {
  synth_temporal();
  ASSERT_EQ(cli({"fit", p(tmp / "temporal/store"), "--out", p(tmp / "pca")}).code, 0);
  const std::vector<std::string> base = {"eval-temporal", p(tmp / "temporal/store"),
                                         p(tmp / "temporal/temporal.jsonl"), p(tmp / "pca")};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  auto r = cli(with({"--report", p(tmp / "r.json"), "--tables", p(tmp / "tables")}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(read_file(tmp / "r.json"));
  ASSERT_EQ(j["results"].size(), 6u);
  EXPECT_GE(j["results"][0]["spearman"].get<double>(), 0.9);
  EXPECT_GE(j["results"][5]["spearman"].get<double>(), 0.9);
  EXPECT_EQ(j["sweep"]["spearman"]["axis_counts"], json({1, 3, 6, 13, 32, 64}));
  EXPECT_TRUE(j["sweep"].contains("auc"));
  EXPECT_TRUE(std::filesystem::exists(tmp / "tables/scores_pca_0.1.csv"));
  EXPECT_TRUE(std::filesystem::exists(tmp / "tables/sweep_pca_spearman.json"));

  // Periods hold 100 rows, so a cap of 500 selects everything.
  ASSERT_EQ(cli(with({"--report", p(tmp / "capped.json"), "--cap", "500", "--seed", "3"})).code,
            0);
  ASSERT_EQ(cli(with({"--report", p(tmp / "exhaustive.json"), "--cap", "0"})).code, 0);
  EXPECT_EQ(read_file(tmp / "capped.json"), read_file(tmp / "exhaustive.json"));

  ASSERT_EQ(cli(with({"--report", p(tmp / "again.json"), "--tables", p(tmp / "tables")})).code,
            0);
  EXPECT_EQ(read_file(tmp / "r.json"), read_file(tmp / "again.json"));

  ASSERT_EQ(cli(with({"--report", p(tmp / "c10.json"), "--cap", "10"})).code, 0);
  EXPECT_EQ(json::parse(read_file(tmp / "c10.json"))["config"]["cap"], 10);

  EXPECT_EQ(cli(with({"--sweep-grid", "1,1"})).code, 1);
  EXPECT_EQ(cli(with({"--sweep-grid", "2,10"})).code, 0);
}

TEST_F(CliTest, EvalTemporalWithoutGoldsExitsTwo) {
  synth_temporal();
  TemporalDataset t = load_temporal(tmp / "temporal/temporal.jsonl");
  for (auto& target : t.targets) {
    target.graded_gold.reset();
    target.binary_gold.reset();
  }
  save_temporal(t, tmp / "nogold.jsonl");
  EXPECT_EQ(cli({"eval-temporal", p(tmp / "temporal/store"), p(tmp / "nogold.jsonl"), "raw"}).code,
            2);
}

TEST_F(CliTest, Heatmap) {
  synth_pairs();
  const auto r = cli({"heatmap", p(tmp / "pairs/store"), p(tmp / "pairs/pairs.jsonl"), "raw",
                      "--svg", p(tmp / "h.svg"), "--csv", p(tmp / "h.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(read_file(tmp / "h.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 51);
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    std::getline(fields, field, ',');
    while (std::getline(fields, field, ',')) {
      const double v = std::stod(field);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  EXPECT_EQ(rows, 120u);
  EXPECT_EQ(read_file(tmp / "h.svg").rfind("<svg", 0), 0u);

  const auto raw = cli({"heatmap", p(tmp / "pairs/store"), p(tmp / "pairs/pairs.jsonl"), "raw",
                        "--no-normalize", "--axes", "3"});
  ASSERT_EQ(raw.code, 0);
  EXPECT_EQ(raw.out.substr(0, raw.out.find('\n')), "instance_id,label,0,1,2");
}

TEST_F(CliTest, SynthCsvStore) {
  ASSERT_EQ(cli({"synth", "pairs", "--out", p(tmp / "s"), "--dim", "8", "--signal-axes", "2",
                 "--instances", "10", "--csv"})
                .code,
            0);
  const auto store = load_store(tmp / "s/store.csv");
  EXPECT_EQ(store.dim(), 8u);
  EXPECT_EQ(store.count(), 20u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"--version"}).code, 0);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"fit", p(tmp / "missing"), "--out", p(tmp / "t")}).code, 1);
  EXPECT_EQ(cli({"fit", p(tmp / "missing"), "--method", "svd", "--out", p(tmp / "t")}).code, 1);

  synth_pairs();
  const auto store = p(tmp / "pairs/store");
  const auto pairs = p(tmp / "pairs/pairs.jsonl");
  EXPECT_EQ(cli({"eval-wic", store, pairs, "raw", "--fractions", "0"}).code, 1);
  EXPECT_EQ(cli({"eval-wic", store, pairs, "raw", "--fractions", "1.5"}).code, 1);
  EXPECT_EQ(cli({"eval-wic", store, pairs, p(tmp / "no-transform")}).code, 1);
  write_file(tmp / "broken.jsonl", "{not json\n");
  EXPECT_EQ(cli({"eval-wic", store, p(tmp / "broken.jsonl"), "raw"}).code, 1);

  ASSERT_EQ(cli({"synth", "pairs", "--out", p(tmp / "small"), "--dim", "8", "--signal-axes", "2",
                 "--instances", "10"})
                .code,
            0);
  ASSERT_EQ(cli({"fit", p(tmp / "small/store"), "--out", p(tmp / "t8")}).code, 0);
  EXPECT_EQ(cli({"eval-wic", store, pairs, p(tmp / "t8")}).code, 1);
}

}  // namespace
}  // namespace scdaxes
