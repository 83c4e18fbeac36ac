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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace scdaxes {

enum class TransformKind { Raw, Pca, Ica };

std::string_view to_string(TransformKind kind);
/// Accepts "raw", "pca", "ica" (case-sensitive). Throws FormatError otherwise.
TransformKind parse_transform_kind(std::string_view name);

/// A fitted linear change of basis with a ranking of the new axes.
///
/// Rows of `components` are axes expressed in the original d-dimensional
/// space, already sorted so that axis_scores is non-increasing. Projecting a
/// row x gives (x - mean) * components^T.
struct AxisTransform {
  TransformKind kind = TransformKind::Raw;
  Eigen::VectorXd mean;        // d
  Eigen::MatrixXd components;  // m x d
  Eigen::VectorXd axis_scores; // m; variance ratio (PCA), skewness (ICA), 1 (Raw)
  std::size_t fitted_on = 0;
  std::optional<std::uint64_t> seed;  // ICA only
  bool converged = true;
  int iterations = 0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(mean.size()); }
  std::size_t axis_count() const noexcept {
    return static_cast<std::size_t>(components.rows());
  }
};

struct IcaConfig {
  int max_iter = 200;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  std::optional<std::size_t> n_components;  // default: d
};

/// Everything fit_ica computes, including the whitened-space unmixing matrix
/// (orthonormal rows after symmetric decorrelation) and the whitening matrix.
struct IcaFit {
  AxisTransform transform;
  Eigen::MatrixXd whitened_unmixing;  // m x m, rows in skewness order
  Eigen::MatrixXd whitening;          // m x d
};

AxisTransform fit_raw(std::size_t dim);

/// PCA through a thin SVD of the centred data. Requires n >= 2 and finite X.
/// Each component's sign is fixed so its largest-magnitude entry is positive.
AxisTransform fit_pca(const Eigen::MatrixXd& X);

/// Symmetric FastICA with the logcosh contrast (g = tanh), preceded by
/// unit-variance whitening from the covariance eigendecomposition. Components
/// are sign-flipped to non-negative skewness and sorted by it. Running out of
/// iterations is reported through `converged`, not an exception.
AxisTransform fit_ica(const Eigen::MatrixXd& X, const IcaConfig& cfg = {});
IcaFit fit_ica_detailed(const Eigen::MatrixXd& X, const IcaConfig& cfg = {});

/// Biased sample skewness m3 / m2^(3/2). Returns 0 for n < 2 or zero variance.
double skewness(std::span<const double> x);

/// max(1, floor(fraction * m)). fraction must lie in (0, 1].
std::size_t top_axis_count(std::size_t m, double fraction);

/// Projects the rows of X onto the top-`fraction` axes of t.
Eigen::MatrixXd project(const AxisTransform& t, const Eigen::MatrixXd& X,
                        double fraction);
/// Projects onto the first n_axes sorted axes (1 <= n_axes <= m).
Eigen::MatrixXd project_axes(const AxisTransform& t, const Eigen::MatrixXd& X,
                             std::size_t n_axes);

/// transform.json + components.f64 + mean.f64 (little-endian binary64).
void save_transform(const AxisTransform& t, const std::filesystem::path& dir);
AxisTransform load_transform(const std::filesystem::path& dir);

}  // namespace scdaxes
