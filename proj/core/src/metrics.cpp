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

#include "scdaxes/metrics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "scdaxes/errors.hpp"

namespace scdaxes {
namespace {

struct ClassCounts {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

ClassCounts check_scores(std::span<const ScoredLabel> scores) {
  ClassCounts c;
  for (const auto& s : scores) {
    if (!std::isfinite(s.score)) throw FormatError("ROC: non-finite score");
    (s.positive ? c.pos : c.neg) += 1;
  }
  if (c.pos == 0 || c.neg == 0) {
    throw UndefinedError("ROC/AUC undefined: need at least one positive and one negative (got " +
                         std::to_string(c.pos) + " positive, " + std::to_string(c.neg) +
                         " negative)");
  }
  return c;
}

std::string_view shortest(double v, std::array<char, 32>& buf) {
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), static_cast<std::size_t>(ptr - buf.data())};
}

}  // namespace

RocResult roc_from_scores(std::span<const ScoredLabel> scores) {
  const ClassCounts counts = check_scores(scores);

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a].score > scores[b].score; });

  RocResult roc;
  roc.n_pos = counts.pos;
  roc.n_neg = counts.neg;
  roc.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});

  const auto n_pos = static_cast<double>(counts.pos);
  const auto n_neg = static_cast<double>(counts.neg);
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  // Twice the area in units of one (pos, neg) pair. Exact integer arithmetic,
  // so the result is bit-identical to the pairwise count.
  std::uint64_t twice_area = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]].score;
    const std::uint64_t tp_before = tp;
    const std::uint64_t fp_before = fp;
    for (; i < order.size() && scores[order[i]].score == threshold; ++i) {
      (scores[order[i]].positive ? tp : fp) += 1;
    }
    twice_area += (fp - fp_before) * (tp + tp_before);
    roc.points.push_back({threshold, static_cast<double>(fp) / n_neg,
                          static_cast<double>(tp) / n_pos});
  }
  roc.auc = static_cast<double>(twice_area) / (2.0 * n_pos * n_neg);
  return roc;
}

double auc_mannwhitney(std::span<const ScoredLabel> scores) {
  const ClassCounts counts = check_scores(scores);
  std::uint64_t twice_wins = 0;
  for (const auto& p : scores) {
    if (!p.positive) continue;
    for (const auto& q : scores) {
      if (q.positive) continue;
      if (p.score > q.score) {
        twice_wins += 2;
      } else if (p.score == q.score) {
        twice_wins += 1;
      }
    }
  }
  return static_cast<double>(twice_wins) /
         (2.0 * static_cast<double>(counts.pos) * static_cast<double>(counts.neg));
}

double trapezoid_auc(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) * 0.5;
  }
  return area;
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2) throw UndefinedError("pearson: need at least 2 observations");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw UndefinedError("pearson: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman_rho: length mismatch");
  if (x.size() < 3) {
    throw UndefinedError("spearman_rho: need at least 3 observations, got " +
                         std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw FormatError("spearman_rho: non-finite input");
    }
  }
  auto is_constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
  };
  if (is_constant(x) || is_constant(y)) {
    throw UndefinedError("spearman_rho: undefined for a constant vector");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

void write_roc_csv(const RocResult& roc, std::ostream& out) {
  std::array<char, 32> buf{};
  out << "threshold,fpr,tpr\n";
  for (const auto& p : roc.points) {
    out << shortest(p.threshold, buf) << ',';
    out << shortest(p.fpr, buf) << ',';
    out << shortest(p.tpr, buf) << '\n';
  }
}

}  // namespace scdaxes
