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
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "scdaxes/datasets.hpp"
#include "scdaxes/embedstore.hpp"
#include "scdaxes/random.hpp"

namespace scdaxes::synth {

/// Parameters of the planted-signal fixtures.
///
/// A few randomly placed "signal" dimensions carry all the meaning
/// information; the rest are nuisance dimensions. Signal dimensions get the
/// largest marginal variance so PCA ranks them first.
struct PlantedSpec {
  std::size_t d = 64;
  std::size_t n_signal_axes = 4;
  double signal_strength = 3.0;
  double noise_sigma = 1.0;
  std::size_t n_instances = 400;          // pair fixtures
  std::size_t n_targets = 40;             // temporal fixtures
  std::size_t occurrences_per_period = 100;
  std::vector<double> golds;              // temporal: explicit shift magnitudes
  std::uint64_t seed = 7;
};

/// Throws std::invalid_argument when the spec is unusable.
void validate(const PlantedSpec& spec);

struct PlantedPairs {
  EmbeddingStore store;
  PairDataset pairs;
  std::vector<std::size_t> signal_dims;
};

/// Each instance draws a base vector (signal dims ~ N(0, strength^2), other
/// dims ~ N(0, sigma^2)). Both rows add per-row jitter N(0, (sigma/4)^2) on
/// every dim; the second row of a different-meaning pair is additionally
/// offset by `signal_strength` along a random unit direction inside the
/// signal block. Labels are balanced and shuffled.
PlantedPairs gen_planted_pairs(const PlantedSpec& spec);

struct PlantedTemporal {
  EmbeddingStore store;
  TemporalDataset temporal;
  std::vector<std::size_t> signal_dims;
};

/// Each target draws a base vector as above. Period-1 occurrences are
/// base + N(0, sigma^2); period-2 occurrences add a shift of magnitude g
/// along a random unit direction in the signal block. graded_gold = g;
/// binary_gold = g above the midpoint of the gold range. Without explicit
/// golds, g is stratified over [0, 2 * signal_strength].
PlantedTemporal gen_planted_temporal(const PlantedSpec& spec);

enum class SourceKind { Exponential, Gamma2, Gamma4, Gamma16, Uniform, Laplace, Bimodal };

/// Population skewness of a source kind.
double nominal_skewness(SourceKind kind);

/// Cycle of non-Gaussian sources with a single most-skewed member first.
std::vector<SourceKind> default_source_kinds(std::size_t k);

struct IcaMixture {
  std::vector<SourceKind> kinds;
  Eigen::MatrixXd sources;   // n x k, each column standardized
  Eigen::MatrixXd mixing;    // k x k, condition number <= 20
  Eigen::MatrixXd observed;  // n x k = sources * mixing^T
};

IcaMixture gen_ica_mixture(std::span<const SourceKind> kinds, std::size_t n,
                           std::uint64_t seed);

/// n x d i.i.d. N(0, 1).
Eigen::MatrixXd gaussian_matrix(std::size_t n, std::size_t d, Xoshiro256& rng);

}  // namespace scdaxes::synth
