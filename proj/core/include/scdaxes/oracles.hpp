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

// Brute-force reference implementations. They deliberately take different
// numerical routes from the library code they check and are only meant for
// tests, acceptance runs and benchmarks.

#include <span>

#include <Eigen/Core>

#include "scdaxes/transforms.hpp"

namespace scdaxes::oracle {

/// PCA from the eigendecomposition of the sample covariance matrix.
/// axis_scores are eigenvalue / trace, clamped at 0.
AxisTransform pca(const Eigen::MatrixXd& X);

/// Skewness from long-double central moment sums.
double skewness(std::span<const double> x);

/// Spearman's rho from an explicit O(n^2) rank table.
double spearman(std::span<const double> x, std::span<const double> y);

/// Principal angles (radians) between the row spaces of A and B, both with
/// orthonormal rows and the same row count. Largest angle first.
Eigen::VectorXd principal_angles(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Absolute Pearson correlation between two columns of samples.
double abs_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace scdaxes::oracle
