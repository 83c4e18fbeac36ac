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

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "scdaxes/contextual.hpp"
#include "scdaxes/errors.hpp"
#include "scdaxes/random.hpp"
#include "scdaxes/synthkit.hpp"
#include "test_support.hpp"

namespace scdaxes {
namespace {

using testing::make_store;

std::vector<PairDistance> distances(std::vector<double> same, std::vector<double> diff) {
  std::vector<PairDistance> out;
  for (double d : same) out.push_back({"s" + std::to_string(out.size()), d, true});
  for (double d : diff) out.push_back({"d" + std::to_string(out.size()), d, false});
  return out;
}

synth::PlantedPairs small_fixture(std::uint64_t seed) {
  synth::PlantedSpec spec;
  spec.d = 16;
  spec.n_instances = 60;
  spec.seed = seed;
  return synth::gen_planted_pairs(spec);
}

TEST(Contextual, ThreeFourFive) {
  const auto store = make_store({"a", "b"}, {{0, 0}, {3, 4}});
  const PairDataset pairs{{{"i1", "a", "b", false}}};
  const auto d = wic_distances(store, pairs, fit_raw(2), 1.0);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].distance, 5.0);
  EXPECT_EQ(d[0].instance_id, "i1");
  EXPECT_FALSE(d[0].label);
}

TEST(Contextual, IdenticalEmbeddingsHaveZeroDistance) {
  const auto store = make_store({"a", "b"}, {{1, 2}, {1, 2}});
  const PairDataset pairs{{{"i1", "a", "b", true}}};
  EXPECT_EQ(wic_distances(store, pairs, fit_raw(2), 1.0)[0].distance, 0.0);
  const auto m = diff_matrix(store, pairs, fit_raw(2), 1.0, false);
  EXPECT_TRUE(m.values.isZero(0.0));
}

TEST(Contextual, WicRocExamples) {
  EXPECT_EQ(wic_roc(distances({0.1, 0.2}, {0.9, 1.0})).auc, 1.0);
  EXPECT_EQ(wic_roc(distances({0.1, 0.3}, {0.2, 0.4})).auc, 0.75);
  EXPECT_EQ(wic_roc(distances({0.5, 0.5}, {0.5})).auc, 0.5);
  EXPECT_THROW(wic_roc(distances({0.5, 0.5}, {})), UndefinedError);
  // Thresholds are reported as distances, ascending after the sentinel.
  const auto roc = wic_roc(distances({0.1}, {0.9}));
  ASSERT_EQ(roc.points.size(), 3u);
  EXPECT_EQ(roc.points[1].threshold, 0.1);
  EXPECT_EQ(roc.points[2].threshold, 0.9);
}

TEST(Contextual, MonotoneRelabelOfDistances) {
  Xoshiro256 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> same, diff;
    for (int i = 0; i < 20; ++i) same.push_back(static_cast<double>(rng.below(10)));
    for (int i = 0; i < 25; ++i) diff.push_back(static_cast<double>(rng.below(10)) + 2);
    const auto a = wic_roc(distances(same, diff));
    for (auto& v : same) v = std::sqrt(v) * 4 + 1;
    for (auto& v : diff) v = std::sqrt(v) * 4 + 1;
    const auto b = wic_roc(distances(same, diff));
    EXPECT_EQ(a.auc, b.auc);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      EXPECT_EQ(a.points[i].fpr, b.points[i].fpr);
      EXPECT_EQ(a.points[i].tpr, b.points[i].tpr);
    }
  }
}

TEST(Contextual, FullRankPcaPreservesDistances) {
  const auto fx = small_fixture(3);
  const auto pca = fit_pca(fx.store.to_matrix());
  ASSERT_EQ(pca.axis_count(), fx.store.dim());
  const auto raw = wic_distances(fx.store, fx.pairs, fit_raw(fx.store.dim()), 1.0);
  const auto rot = wic_distances(fx.store, fx.pairs, pca, 1.0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    EXPECT_NEAR(raw[i].distance, rot[i].distance, 1e-8);
  }
  EXPECT_NEAR(wic_roc(raw).auc, wic_roc(rot).auc, 1e-9);
}

TEST(Contextual, DiffMatrixLayout) {
  const auto store = make_store({"a", "b", "c", "d"}, {{0, 0}, {1, 2}, {5, 5}, {2, 9}});
  const PairDataset pairs{{{"f1", "a", "b", false}, {"t1", "c", "d", true}, {"t2", "a", "c", true}}};
  const auto m = diff_matrix(store, pairs, fit_raw(2), 1.0, false);
  EXPECT_EQ(m.row_order, (std::vector<std::string>{"t1", "t2", "f1"}));
  EXPECT_EQ(m.labels, (std::vector<bool>{true, true, false}));
  EXPECT_EQ(m.n_true, 2u);
  Eigen::MatrixXd expected(3, 2);
  expected << 3, -4, -5, -5, -1, -2;
  EXPECT_EQ(m.values, expected);

  // Column 0 spans [-5, 3], column 1 spans [-5, -2].
  const auto n = diff_matrix(store, pairs, fit_raw(2), 1.0, true);
  Eigen::MatrixXd scaled(3, 2);
  scaled << 1.0, 1.0 / 3.0, 0.0, 0.0, 0.5, 1.0;
  EXPECT_TRUE(n.normalized);
  EXPECT_LT((n.values - scaled).cwiseAbs().maxCoeff(), 1e-15) << n.values;

  const auto one = diff_matrix(store, PairDataset{{pairs.instances[0]}}, fit_raw(2), 1.0, true);
  EXPECT_TRUE(one.values.isZero(0.0));
}

TEST(Contextual, DisplayTruncation) {
  const auto fx = small_fixture(4);
  const auto raw = fit_raw(16);
  EXPECT_EQ(diff_matrix(fx.store, fx.pairs, raw, 1.0, true, 5).axes(), 5u);
  EXPECT_EQ(diff_matrix(fx.store, fx.pairs, raw, 0.25, true, 50).axes(), 4u);
  EXPECT_EQ(diff_matrix(fx.store, fx.pairs, raw, 1.0, true).axes(), 16u);
  EXPECT_THROW(diff_matrix(fx.store, fx.pairs, raw, 1.0, true, 0), std::invalid_argument);
}

TEST(Contextual, NormalizationIsIdempotentAndBounded) {
  Xoshiro256 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd m(10 + trial, 7);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = rng.normal(0, 1e3);
    m.col(3).setConstant(4.2);
    normalize_columns(m);
    EXPECT_GE(m.minCoeff(), 0.0);
    EXPECT_LE(m.maxCoeff(), 1.0);
    EXPECT_TRUE(m.col(3).isZero(0.0));
    Eigen::MatrixXd again = m;
    normalize_columns(again);
    EXPECT_LT((again - m).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Contextual, Exports) {
  const auto store = make_store({"a", "b", "c", "d"}, {{0, 0}, {1, 2}, {5, 5}, {2, 9}});
  const PairDataset pairs{{{"f1", "a", "b", false}, {"t1", "c", "d", true}}};
  const auto m = diff_matrix(store, pairs, fit_raw(2), 1.0, true);
  std::ostringstream csv;
  write_diff_csv(m, csv);
  EXPECT_EQ(csv.str(), "instance_id,label,0,1\nt1,1,1,0\nf1,0,0,1\n");

  std::ostringstream svg;
  write_diff_svg(m, svg);
  const std::string s = svg.str();
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  std::size_t rects = 0;
  for (std::size_t p = s.find("<rect"); p != std::string::npos; p = s.find("<rect", p + 1)) {
    ++rects;
  }
  EXPECT_EQ(rects, 4u);
  EXPECT_NE(s.find("<line"), std::string::npos);
  EXPECT_NE(s.find("rgb(255,255,255)"), std::string::npos);
}

TEST(Contextual, IndependentOfThreadCount) {
  const auto fx = small_fixture(5);
  const auto pca = fit_pca(fx.store.to_matrix());
  ::setenv("SCD_AXES_THREADS", "1", 1);
  const auto one = wic_distances(fx.store, fx.pairs, pca, 0.5);
  ::setenv("SCD_AXES_THREADS", "7", 1);
  const auto many = wic_distances(fx.store, fx.pairs, pca, 0.5);
  ::unsetenv("SCD_AXES_THREADS");
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].distance, many[i].distance);
}

TEST(Contextual, DimensionMismatch) {
  const auto fx = small_fixture(6);
  EXPECT_THROW(wic_distances(fx.store, fx.pairs, fit_raw(3), 1.0), FormatError);
}

}  // namespace
}  // namespace scdaxes
