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

#include "scdaxes/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace scdaxes::oracle {

AxisTransform pca(const Eigen::MatrixXd& X) {
  if (X.rows() < 2) throw std::invalid_argument("oracle::pca: need at least 2 rows");
  const Eigen::Index d = X.cols();
  AxisTransform t;
  t.kind = TransformKind::Pca;
  t.fitted_on = static_cast<std::size_t>(X.rows());
  t.mean = X.colwise().mean().transpose();
  const Eigen::MatrixXd centered = X.rowwise() - t.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(X.rows() - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
  const double trace = lambda.sum();
  t.components.resize(d, d);
  t.axis_scores.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::Index src = d - 1 - i;  // eigenvalues ascend
    Eigen::RowVectorXd row = eig.eigenvectors().col(src).transpose();
    Eigen::Index arg = 0;
    row.cwiseAbs().maxCoeff(&arg);
    if (row(arg) < 0) row = -row;
    t.components.row(i) = row;
    t.axis_scores(i) = trace > 0 ? lambda(src) / trace : 0.0;
  }
  return t;
}

double skewness(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const auto n = static_cast<long double>(x.size());
  long double sum = 0;
  for (double v : x) sum += v;
  const long double mean = sum / n;
  long double m2 = 0;
  long double m3 = 0;
  for (double v : x) {
    const long double c = static_cast<long double>(v) - mean;
    m2 += c * c;
    m3 += c * c * c;
  }
  m2 /= n;
  m3 /= n;
  if (m2 == 0) return 0.0;
  return static_cast<double>(m3 / std::pow(m2, 1.5L));
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw std::invalid_argument("oracle::spearman: need equal lengths >= 3");
  }
  const std::size_t n = x.size();
  auto rank_table = [n](std::span<const double> v) {
    std::vector<long double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t less = 0;
      std::size_t equal = 0;
      for (std::size_t j = 0; j < n; ++j) {
        less += v[j] < v[i];
        equal += v[j] == v[i];
      }
      r[i] = 1.0L + static_cast<long double>(less) + (static_cast<long double>(equal) - 1) / 2;
    }
    return r;
  };
  const auto rx = rank_table(x);
  const auto ry = rank_table(y);
  // Mean rank is always (n + 1) / 2.
  const long double mean = (static_cast<long double>(n) + 1) / 2;
  long double sxy = 0;
  long double sxx = 0;
  long double syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0 || syy == 0) throw std::domain_error("oracle::spearman: constant input");
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

Eigen::VectorXd principal_angles(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw std::invalid_argument("principal_angles: shape mismatch");
  }
  // Singular values of the part of B orthogonal to span(A) are the sines of
  // the principal angles; accurate for small angles, unlike arccos.
  const Eigen::MatrixXd residual = B - (B * A.transpose()) * A;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  Eigen::VectorXd angles = svd.singularValues();
  for (Eigen::Index i = 0; i < angles.size(); ++i) angles(i) = std::asin(std::min(1.0, angles(i)));
  return angles;
}

double abs_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ca = a.array() - a.mean();
  const Eigen::VectorXd cb = b.array() - b.mean();
  const double denom = std::sqrt(ca.squaredNorm() * cb.squaredNorm());
  return denom > 0 ? std::abs(ca.dot(cb)) / denom : 0.0;
}

}  // namespace scdaxes::oracle
