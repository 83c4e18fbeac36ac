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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scdaxes/datasets.hpp"
#include "scdaxes/embedstore.hpp"
#include "scdaxes/metrics.hpp"
#include "scdaxes/transforms.hpp"

namespace scdaxes {

/// Default per-period occurrence cap for change scores.
inline constexpr std::size_t kDefaultOccurrenceCap = 200;

/// cap == nullopt means exhaustive.
using OccurrenceCap = std::optional<std::size_t>;

struct ChangeScore {
  double score = 0.0;
  std::size_t n_pairs_used = 0;
};

/// Average pairwise Euclidean distance between the projected period-1 and
/// period-2 occurrences of a target. A period with more than `cap` rows is
/// replaced by a uniform sample of `cap` rows drawn from a stream seeded by
/// derive_seed(seed, lemma).
ChangeScore change_score(const EmbeddingStore& store, const TemporalTarget& target,
                         const AxisTransform& transform, double top_fraction,
                         OccurrenceCap cap, std::uint64_t seed);

struct ChangeScoreEntry {
  std::string lemma;
  double score = 0.0;
  std::size_t n_pairs_used = 0;
  std::optional<double> graded_gold;
  std::optional<bool> binary_gold;
};

struct ChangeScoreTable {
  std::vector<ChangeScoreEntry> entries;
  TransformKind transform_kind = TransformKind::Raw;
  double top_fraction = 1.0;
  std::size_t n_axes = 0;
};

/// change_score for every target (computed in parallel, result independent
/// of scheduling).
ChangeScoreTable score_targets(const EmbeddingStore& store,
                               const TemporalDataset& temporal,
                               const AxisTransform& transform, double top_fraction,
                               OccurrenceCap cap, std::uint64_t seed);

/// Positive class = changed; higher score = more likely changed. Targets
/// without a binary gold are skipped.
RocResult temporal_roc(const ChangeScoreTable& table);

/// Spearman's rho between scores and graded golds over targets that have
/// one. Needs at least 3 such targets.
double graded_spearman(const ChangeScoreTable& table);

enum class SweepMetric { Spearman, Auc };
std::string_view to_string(SweepMetric metric);

struct SweepResult {
  std::vector<std::size_t> axis_counts;
  std::vector<double> metric_values;
  SweepMetric metric = SweepMetric::Spearman;
};

/// Approximately {0.1%, 0.2%, 0.5%, 1%, 2%, 5%, 10%, 20%, 50%, 100%} of m
/// axes, rounded to nearest, at least 1, deduplicated.
std::vector<std::size_t> default_sweep_grid(std::size_t m);

/// Change scores of every target restricted to the first j sorted axes, for
/// each j in axis_grid: result[t][g]. Grid must be strictly increasing within
/// [1, m]. One pass over the occurrence pairs serves the whole grid.
std::vector<std::vector<double>> cumulative_change_scores(
    const EmbeddingStore& store, const TemporalDataset& temporal,
    const AxisTransform& transform, std::span<const std::size_t> axis_grid,
    OccurrenceCap cap, std::uint64_t seed);

SweepResult spearman_sweep(const EmbeddingStore& store, const TemporalDataset& temporal,
                           const AxisTransform& transform,
                           std::span<const std::size_t> axis_grid, OccurrenceCap cap,
                           std::uint64_t seed);

SweepResult auc_sweep(const EmbeddingStore& store, const TemporalDataset& temporal,
                      const AxisTransform& transform,
                      std::span<const std::size_t> axis_grid, OccurrenceCap cap,
                      std::uint64_t seed);

void write_table_csv(const ChangeScoreTable& table, std::ostream& out);
std::string table_to_json(const ChangeScoreTable& table);
void write_sweep_csv(const SweepResult& sweep, std::ostream& out);
std::string sweep_to_json(const SweepResult& sweep);

}  // namespace scdaxes
