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

#include "scdaxes/temporal.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "scdaxes/errors.hpp"
#include "scdaxes/parallel.hpp"
#include "scdaxes/random.hpp"

using json = nlohmann::json;

namespace scdaxes {
namespace {

// Positions (into the ids vector) of the occurrences that enter the score.
std::vector<std::size_t> sample_occurrences(std::size_t n, OccurrenceCap cap, Xoshiro256& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (!cap || n <= *cap) return idx;
  // Partial Fisher-Yates, then restore dataset order.
  for (std::size_t i = 0; i < *cap; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(*cap);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void check_cap(OccurrenceCap cap) {
  if (cap && *cap == 0) throw std::invalid_argument("occurrence cap must be positive");
}

void check_grid(std::span<const std::size_t> grid, std::size_t m) {
  if (grid.empty()) throw std::invalid_argument("axis grid is empty");
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (grid[g] < 1 || grid[g] > m) {
      throw std::invalid_argument("axis grid value " + std::to_string(grid[g]) +
                                  " outside [1, " + std::to_string(m) + "]");
    }
    if (g > 0 && grid[g] <= grid[g - 1]) {
      throw std::invalid_argument("axis grid must be strictly increasing");
    }
  }
}

struct TargetScores {
  std::vector<double> per_grid;
  std::size_t n_pairs = 0;
};

// Slots index rows of `projected`, which holds at least grid.back() columns.
TargetScores score_target(const Eigen::MatrixXd& projected,
                          std::span<const Eigen::Index> period1,
                          std::span<const Eigen::Index> period2,
                          std::span<const std::size_t> grid) {
  const std::size_t n_grid = grid.size();
  const auto width = static_cast<Eigen::Index>(grid.back());
  std::vector<double> sums(n_grid, 0.0);
  Eigen::RowVectorXd diff(width);
  for (Eigen::Index u : period1) {
    for (Eigen::Index v : period2) {
      diff = projected.row(u).head(width) - projected.row(v).head(width);
      double acc = 0.0;
      Eigen::Index axis = 0;
      for (std::size_t g = 0; g < n_grid; ++g) {
        for (; axis < static_cast<Eigen::Index>(grid[g]); ++axis) acc += diff(axis) * diff(axis);
        sums[g] += std::sqrt(acc);
      }
    }
  }
  TargetScores out;
  out.n_pairs = period1.size() * period2.size();
  out.per_grid.resize(n_grid);
  for (std::size_t g = 0; g < n_grid; ++g) {
    out.per_grid[g] = sums[g] / static_cast<double>(out.n_pairs);
  }
  return out;
}

struct SampledTarget {
  std::vector<Eigen::Index> period1;
  std::vector<Eigen::Index> period2;
};

template <typename SlotOf>
SampledTarget sample_target(const TemporalTarget& target, OccurrenceCap cap,
                            std::uint64_t seed, SlotOf&& slot_of) {
  if (target.period1_rows.empty() || target.period2_rows.empty()) {
    throw FormatError("target \"" + target.lemma + "\": empty period set");
  }
  Xoshiro256 rng(derive_seed(seed, target.lemma));
  SampledTarget out;
  for (std::size_t i : sample_occurrences(target.period1_rows.size(), cap, rng)) {
    out.period1.push_back(slot_of(target.period1_rows[i]));
  }
  for (std::size_t i : sample_occurrences(target.period2_rows.size(), cap, rng)) {
    out.period2.push_back(slot_of(target.period2_rows[i]));
  }
  return out;
}

std::vector<TargetScores> score_all(const EmbeddingStore& store,
                                    const TemporalDataset& temporal,
                                    const AxisTransform& transform,
                                    std::span<const std::size_t> grid, OccurrenceCap cap,
                                    std::uint64_t seed) {
  check_cap(cap);
  check_grid(grid, transform.axis_count());
  validate(temporal);
  check_references(temporal, store);

  const auto rows = referenced_rows(temporal, store);
  std::vector<Eigen::Index> slot_of(store.count(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) slot_of[rows[i]] = static_cast<Eigen::Index>(i);
  const Eigen::MatrixXd projected = project_axes(transform, store.gather(rows), grid.back());

  std::vector<TargetScores> out(temporal.size());
  parallel_for(temporal.size(), [&](std::size_t t) {
    const auto sampled = sample_target(temporal.targets[t], cap, seed, [&](const std::string& id) {
      return slot_of[store.index_of(id)];
    });
    out[t] = score_target(projected, sampled.period1, sampled.period2, grid);
  });
  return out;
}

std::string_view shortest(double v, std::array<char, 32>& buf) {
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), static_cast<std::size_t>(ptr - buf.data())};
}

}  // namespace

ChangeScore change_score(const EmbeddingStore& store, const TemporalTarget& target,
                         const AxisTransform& transform, double top_fraction,
                         OccurrenceCap cap, std::uint64_t seed) {
  check_cap(cap);
  const std::size_t n_axes = top_axis_count(transform.axis_count(), top_fraction);

  std::vector<RowIndex> rows;
  const auto sampled = sample_target(target, cap, seed, [&](const std::string& id) {
    rows.push_back(store.index_of(id));
    return static_cast<Eigen::Index>(rows.size() - 1);
  });
  const Eigen::MatrixXd projected = project_axes(transform, store.gather(rows), n_axes);
  const std::array<std::size_t, 1> grid{n_axes};
  const auto scores = score_target(projected, sampled.period1, sampled.period2, grid);
  return {scores.per_grid[0], scores.n_pairs};
}

ChangeScoreTable score_targets(const EmbeddingStore& store, const TemporalDataset& temporal,
                               const AxisTransform& transform, double top_fraction,
                               OccurrenceCap cap, std::uint64_t seed) {
  const std::size_t n_axes = top_axis_count(transform.axis_count(), top_fraction);
  const std::array<std::size_t, 1> grid{n_axes};
  const auto scores = score_all(store, temporal, transform, grid, cap, seed);

  ChangeScoreTable table;
  table.transform_kind = transform.kind;
  table.top_fraction = top_fraction;
  table.n_axes = n_axes;
  table.entries.reserve(temporal.size());
  for (std::size_t t = 0; t < temporal.size(); ++t) {
    const auto& target = temporal.targets[t];
    table.entries.push_back({target.lemma, scores[t].per_grid[0], scores[t].n_pairs,
                             target.graded_gold, target.binary_gold});
  }
  return table;
}

RocResult temporal_roc(const ChangeScoreTable& table) {
  std::vector<ScoredLabel> scores;
  for (const auto& e : table.entries) {
    if (e.binary_gold) scores.push_back({e.score, *e.binary_gold});
  }
  return roc_from_scores(scores);
}

double graded_spearman(const ChangeScoreTable& table) {
  std::vector<double> predicted;
  std::vector<double> gold;
  for (const auto& e : table.entries) {
    if (!e.graded_gold) continue;
    predicted.push_back(e.score);
    gold.push_back(*e.graded_gold);
  }
  return spearman_rho(predicted, gold);
}

std::string_view to_string(SweepMetric metric) {
  return metric == SweepMetric::Spearman ? "spearman" : "auc";
}

std::vector<std::size_t> default_sweep_grid(std::size_t m) {
  static constexpr std::array<double, 10> kFractions = {0.001, 0.002, 0.005, 0.01, 0.02,
                                                        0.05,  0.1,   0.2,   0.5,  1.0};
  std::vector<std::size_t> grid;
  for (double f : kFractions) {
    const auto j = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(f * static_cast<double>(m))));
    if (grid.empty() || j > grid.back()) grid.push_back(std::min(j, m));
  }
  return grid;
}

std::vector<std::vector<double>> cumulative_change_scores(
    const EmbeddingStore& store, const TemporalDataset& temporal,
    const AxisTransform& transform, std::span<const std::size_t> axis_grid,
    OccurrenceCap cap, std::uint64_t seed) {
  auto scores = score_all(store, temporal, transform, axis_grid, cap, seed);
  std::vector<std::vector<double>> out;
  out.reserve(scores.size());
  for (auto& s : scores) out.push_back(std::move(s.per_grid));
  return out;
}

SweepResult spearman_sweep(const EmbeddingStore& store, const TemporalDataset& temporal,
                           const AxisTransform& transform,
                           std::span<const std::size_t> axis_grid, OccurrenceCap cap,
                           std::uint64_t seed) {
  std::vector<std::size_t> with_gold;
  std::vector<double> gold;
  for (std::size_t t = 0; t < temporal.size(); ++t) {
    if (temporal.targets[t].graded_gold) {
      with_gold.push_back(t);
      gold.push_back(*temporal.targets[t].graded_gold);
    }
  }
  if (with_gold.size() < 3) {
    throw UndefinedError("Spearman sweep needs at least 3 targets with graded_gold");
  }
  const auto scores = cumulative_change_scores(store, temporal, transform, axis_grid, cap, seed);

  SweepResult sweep;
  sweep.metric = SweepMetric::Spearman;
  sweep.axis_counts.assign(axis_grid.begin(), axis_grid.end());
  std::vector<double> predicted(with_gold.size());
  for (std::size_t g = 0; g < axis_grid.size(); ++g) {
    for (std::size_t i = 0; i < with_gold.size(); ++i) predicted[i] = scores[with_gold[i]][g];
    sweep.metric_values.push_back(spearman_rho(predicted, gold));
  }
  return sweep;
}

SweepResult auc_sweep(const EmbeddingStore& store, const TemporalDataset& temporal,
                      const AxisTransform& transform, std::span<const std::size_t> axis_grid,
                      OccurrenceCap cap, std::uint64_t seed) {
  std::vector<std::size_t> with_gold;
  for (std::size_t t = 0; t < temporal.size(); ++t) {
    if (temporal.targets[t].binary_gold) with_gold.push_back(t);
  }
  const auto scores = cumulative_change_scores(store, temporal, transform, axis_grid, cap, seed);

  SweepResult sweep;
  sweep.metric = SweepMetric::Auc;
  sweep.axis_counts.assign(axis_grid.begin(), axis_grid.end());
  std::vector<ScoredLabel> labelled(with_gold.size());
  for (std::size_t g = 0; g < axis_grid.size(); ++g) {
    for (std::size_t i = 0; i < with_gold.size(); ++i) {
      labelled[i] = {scores[with_gold[i]][g], *temporal.targets[with_gold[i]].binary_gold};
    }
    sweep.metric_values.push_back(roc_from_scores(labelled).auc);
  }
  return sweep;
}

void write_table_csv(const ChangeScoreTable& table, std::ostream& out) {
  std::array<char, 32> buf{};
  out << "lemma,score,n_pairs_used,graded_gold,binary_gold\n";
  for (const auto& e : table.entries) {
    out << e.lemma << ',' << shortest(e.score, buf) << ',' << e.n_pairs_used << ',';
    if (e.graded_gold) out << shortest(*e.graded_gold, buf);
    out << ',';
    if (e.binary_gold) out << (*e.binary_gold ? 1 : 0);
    out << '\n';
  }
}

std::string table_to_json(const ChangeScoreTable& table) {
  json entries = json::array();
  for (const auto& e : table.entries) {
    entries.push_back({{"lemma", e.lemma},
                       {"score", e.score},
                       {"n_pairs_used", e.n_pairs_used},
                       {"graded_gold", e.graded_gold ? json(*e.graded_gold) : json(nullptr)},
                       {"binary_gold", e.binary_gold ? json(*e.binary_gold) : json(nullptr)}});
  }
  json doc = {{"transform_kind", std::string(to_string(table.transform_kind))},
              {"top_fraction", table.top_fraction},
              {"n_axes", table.n_axes},
              {"entries", std::move(entries)}};
  return doc.dump(1);
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
  std::array<char, 32> buf{};
  out << "axis_count," << to_string(sweep.metric) << '\n';
  for (std::size_t i = 0; i < sweep.axis_counts.size(); ++i) {
    out << sweep.axis_counts[i] << ',' << shortest(sweep.metric_values[i], buf) << '\n';
  }
}

std::string sweep_to_json(const SweepResult& sweep) {
  json doc = {{"metric", std::string(to_string(sweep.metric))},
              {"axis_counts", sweep.axis_counts},
              {"metric_values", sweep.metric_values}};
  return doc.dump(1);
}

}  // namespace scdaxes
