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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace scdaxes {

struct ScoredLabel {
  double score = 0.0;
  bool positive = false;
};

/// One operating point. An instance is predicted positive when its score is
/// >= threshold. The leading (0,0) sentinel carries threshold +inf.
struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  std::vector<RocPoint> points;  // starts at (0,0), ends at (1,1)
  double auc = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

/// ROC by sweeping every distinct score in descending order. Tied scores move
/// fpr and tpr in a single (diagonal) step, so the trapezoidal AUC equals the
/// Mann-Whitney statistic with half credit for ties.
/// Throws UndefinedError for single-class input, FormatError for NaN/Inf.
RocResult roc_from_scores(std::span<const ScoredLabel> scores);

/// Pairwise Mann-Whitney AUC, O(n_pos * n_neg). Reference for roc_from_scores.
double auc_mannwhitney(std::span<const ScoredLabel> scores);

/// Trapezoidal area under a sequence of ROC points.
double trapezoid_auc(std::span<const RocPoint> points);

/// Average ranks, 1-based; ties share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> x);

/// Pearson correlation. Throws UndefinedError if either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman's rho: Pearson correlation of average ranks. Needs n >= 3 and at
/// least two distinct values in each vector (UndefinedError otherwise).
double spearman_rho(std::span<const double> x, std::span<const double> y);

/// "threshold,fpr,tpr" CSV, one line per point.
void write_roc_csv(const RocResult& roc, std::ostream& out);

}  // namespace scdaxes
