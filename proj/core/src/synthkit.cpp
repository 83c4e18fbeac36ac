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

#include "scdaxes/synthkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace scdaxes::synth {
namespace {

std::string padded(std::size_t value, std::size_t width) {
  std::string s = std::to_string(value);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

std::size_t digits(std::size_t n) { return std::to_string(n > 0 ? n - 1 : 0).size(); }

std::vector<std::size_t> choose_signal_dims(const PlantedSpec& spec, Xoshiro256& rng) {
  std::vector<std::size_t> dims(spec.d);
  std::iota(dims.begin(), dims.end(), std::size_t{0});
  for (std::size_t i = 0; i < spec.n_signal_axes; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(spec.d - i));
    std::swap(dims[i], dims[j]);
  }
  dims.resize(spec.n_signal_axes);
  std::sort(dims.begin(), dims.end());
  return dims;
}

// Per-dimension base vector: signal dims ~ N(0, strength^2), others ~ N(0, sigma^2).
std::vector<double> draw_base(const PlantedSpec& spec, const std::vector<bool>& is_signal,
                              Xoshiro256& rng) {
  std::vector<double> base(spec.d);
  for (std::size_t j = 0; j < spec.d; ++j) {
    base[j] = rng.normal() * (is_signal[j] ? spec.signal_strength : spec.noise_sigma);
  }
  return base;
}

// Uniformly random unit direction inside the signal block, as a d-vector.
std::vector<double> draw_signal_direction(const PlantedSpec& spec,
                                          const std::vector<std::size_t>& signal_dims,
                                          Xoshiro256& rng) {
  std::vector<double> dir(spec.d, 0.0);
  double norm = 0.0;
  while (!(norm > 1e-12)) {
    norm = 0.0;
    for (std::size_t j : signal_dims) {
      dir[j] = rng.normal();
      norm += dir[j] * dir[j];
    }
    norm = std::sqrt(norm);
  }
  for (std::size_t j : signal_dims) dir[j] /= norm;
  return dir;
}

std::vector<bool> signal_mask(const PlantedSpec& spec, const std::vector<std::size_t>& dims) {
  std::vector<bool> mask(spec.d, false);
  for (std::size_t j : dims) mask[j] = true;
  return mask;
}

double draw_source(SourceKind kind, Xoshiro256& rng) {
  switch (kind) {
    case SourceKind::Exponential: return rng.exponential();
    case SourceKind::Gamma2: return rng.gamma_int(2);
    case SourceKind::Gamma4: return rng.gamma_int(4);
    case SourceKind::Gamma16: return rng.gamma_int(16);
    case SourceKind::Uniform: return rng.uniform();
    case SourceKind::Laplace: {
      const double e = rng.exponential();
      return rng.uniform() < 0.5 ? -e : e;
    }
    case SourceKind::Bimodal: return (rng.uniform() < 0.5 ? -1.0 : 1.0) + 0.3 * rng.normal();
  }
  return 0.0;
}

}  // namespace

void validate(const PlantedSpec& spec) {
  if (spec.d == 0) throw std::invalid_argument("planted spec: d must be positive");
  if (spec.n_signal_axes < 1 || spec.n_signal_axes > spec.d) {
    throw std::invalid_argument("planted spec: need 1 <= n_signal_axes <= d");
  }
  if (!(spec.noise_sigma > 0.0) || !std::isfinite(spec.noise_sigma)) {
    throw std::invalid_argument("planted spec: noise_sigma must be positive");
  }
  if (!(spec.signal_strength > spec.noise_sigma) || !std::isfinite(spec.signal_strength)) {
    throw std::invalid_argument("planted spec: signal_strength must exceed noise_sigma");
  }
}

PlantedPairs gen_planted_pairs(const PlantedSpec& spec) {
  validate(spec);
  if (spec.n_instances < 2) {
    throw std::invalid_argument("planted spec: need at least 2 pair instances");
  }
  Xoshiro256 rng(spec.seed);
  const auto signal_dims = choose_signal_dims(spec, rng);
  const auto is_signal = signal_mask(spec, signal_dims);

  // Balanced labels in random order.
  std::vector<bool> labels(spec.n_instances, false);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(spec.n_instances / 2),
            true);
  for (std::size_t i = labels.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
    const bool tmp = labels[i];
    labels[i] = labels[j];
    labels[j] = tmp;
  }

  const double jitter = spec.noise_sigma / 4.0;
  const std::size_t width = digits(spec.n_instances);
  std::vector<std::string> ids;
  std::vector<float> data;
  ids.reserve(2 * spec.n_instances);
  data.reserve(2 * spec.n_instances * spec.d);
  PairDataset pairs;
  for (std::size_t i = 0; i < spec.n_instances; ++i) {
    const auto base = draw_base(spec, is_signal, rng);
    std::vector<double> offset(spec.d, 0.0);
    if (!labels[i]) {
      offset = draw_signal_direction(spec, signal_dims, rng);
      for (double& v : offset) v *= spec.signal_strength;
    }
    for (std::size_t j = 0; j < spec.d; ++j) {
      data.push_back(static_cast<float>(base[j] + jitter * rng.normal()));
    }
    for (std::size_t j = 0; j < spec.d; ++j) {
      data.push_back(static_cast<float>(base[j] + offset[j] + jitter * rng.normal()));
    }
    const std::string stem = "pair" + padded(i, width);
    ids.push_back(stem + "_a");
    ids.push_back(stem + "_b");
    pairs.instances.push_back({stem, stem + "_a", stem + "_b", static_cast<bool>(labels[i])});
  }
  return {EmbeddingStore(spec.d, std::move(ids), std::move(data)), std::move(pairs),
          signal_dims};
}

PlantedTemporal gen_planted_temporal(const PlantedSpec& spec) {
  validate(spec);
  if (spec.occurrences_per_period < 1) {
    throw std::invalid_argument("planted spec: need at least 1 occurrence per period");
  }
  Xoshiro256 rng(spec.seed);
  const auto signal_dims = choose_signal_dims(spec, rng);
  const auto is_signal = signal_mask(spec, signal_dims);

  std::vector<double> golds = spec.golds;
  if (golds.empty()) {
    if (spec.n_targets < 2) throw std::invalid_argument("planted spec: need at least 2 targets");
    // Stratified over [0, 2 * strength], strata assigned in random order.
    std::vector<std::size_t> stratum(spec.n_targets);
    std::iota(stratum.begin(), stratum.end(), std::size_t{0});
    for (std::size_t i = stratum.size() - 1; i > 0; --i) {
      std::swap(stratum[i], stratum[static_cast<std::size_t>(rng.below(i + 1))]);
    }
    golds.resize(spec.n_targets);
    for (std::size_t t = 0; t < spec.n_targets; ++t) {
      golds[t] = 2.0 * spec.signal_strength *
                 (static_cast<double>(stratum[t]) + rng.uniform()) /
                 static_cast<double>(spec.n_targets);
    }
  } else {
    for (double g : golds) {
      if (!(g >= 0.0) || !std::isfinite(g)) {
        throw std::invalid_argument("planted spec: golds must be finite and non-negative");
      }
    }
    if (std::set<double>(golds.begin(), golds.end()).size() < 2) {
      throw std::invalid_argument("planted spec: golds need at least 2 distinct values");
    }
  }
  const auto [lo, hi] = std::minmax_element(golds.begin(), golds.end());
  const double midpoint = 0.5 * (*lo + *hi);

  const std::size_t n_occ = spec.occurrences_per_period;
  const std::size_t target_width = digits(golds.size());
  const std::size_t occ_width = digits(n_occ);
  std::vector<std::string> ids;
  std::vector<float> data;
  ids.reserve(golds.size() * 2 * n_occ);
  data.reserve(golds.size() * 2 * n_occ * spec.d);
  TemporalDataset temporal;
  for (std::size_t t = 0; t < golds.size(); ++t) {
    const auto base = draw_base(spec, is_signal, rng);
    auto shift = draw_signal_direction(spec, signal_dims, rng);
    for (double& v : shift) v *= golds[t];

    TemporalTarget target;
    target.lemma = "w" + padded(t, target_width);
    target.graded_gold = golds[t];
    target.binary_gold = golds[t] > midpoint;
    for (int period = 1; period <= 2; ++period) {
      auto& period_ids = period == 1 ? target.period1_rows : target.period2_rows;
      for (std::size_t o = 0; o < n_occ; ++o) {
        for (std::size_t j = 0; j < spec.d; ++j) {
          const double moved = period == 2 ? shift[j] : 0.0;
          data.push_back(static_cast<float>(base[j] + moved + spec.noise_sigma * rng.normal()));
        }
        std::string id = target.lemma + "_" + std::to_string(period) + "_" + padded(o, occ_width);
        period_ids.push_back(id);
        ids.push_back(std::move(id));
      }
    }
    temporal.targets.push_back(std::move(target));
  }
  return {EmbeddingStore(spec.d, std::move(ids), std::move(data)), std::move(temporal),
          signal_dims};
}

double nominal_skewness(SourceKind kind) {
  switch (kind) {
    case SourceKind::Exponential: return 2.0;
    case SourceKind::Gamma2: return 2.0 / std::sqrt(2.0);
    case SourceKind::Gamma4: return 1.0;
    case SourceKind::Gamma16: return 0.5;
    case SourceKind::Uniform:
    case SourceKind::Laplace:
    case SourceKind::Bimodal: return 0.0;
  }
  return 0.0;
}

std::vector<SourceKind> default_source_kinds(std::size_t k) {
  static constexpr std::array<SourceKind, 8> kCycle = {
      SourceKind::Exponential, SourceKind::Uniform, SourceKind::Gamma4,  SourceKind::Laplace,
      SourceKind::Gamma16,     SourceKind::Bimodal, SourceKind::Uniform, SourceKind::Laplace};
  std::vector<SourceKind> kinds;
  for (std::size_t i = 0; i < k; ++i) kinds.push_back(kCycle[i % kCycle.size()]);
  return kinds;
}

IcaMixture gen_ica_mixture(std::span<const SourceKind> kinds, std::size_t n,
                           std::uint64_t seed) {
  if (kinds.empty()) throw std::invalid_argument("gen_ica_mixture: need at least one source");
  if (n < 2) throw std::invalid_argument("gen_ica_mixture: need at least 2 samples");
  Xoshiro256 rng(seed);
  const auto k = static_cast<Eigen::Index>(kinds.size());
  const auto rows = static_cast<Eigen::Index>(n);

  IcaMixture mix;
  mix.kinds.assign(kinds.begin(), kinds.end());
  mix.sources.resize(rows, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      mix.sources(r, c) = draw_source(kinds[static_cast<std::size_t>(c)], rng);
    }
    auto col = mix.sources.col(c);
    col.array() -= col.mean();
    col /= std::sqrt(col.squaredNorm() / static_cast<double>(n));
  }

  while (true) {
    Eigen::MatrixXd A = gaussian_matrix(kinds.size(), kinds.size(), rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    if (sv(k - 1) > 0.0 && sv(0) / sv(k - 1) <= 20.0) {
      mix.mixing = std::move(A);
      break;
    }
  }
  mix.observed = mix.sources * mix.mixing.transpose();
  return mix;
}

Eigen::MatrixXd gaussian_matrix(std::size_t n, std::size_t d, Xoshiro256& rng) {
  Eigen::MatrixXd M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  // Row-major fill order, independent of Eigen's storage order.
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) M(i, j) = rng.normal();
  }
  return M;
}

}  // namespace scdaxes::synth
