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

#include "scdaxes/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "scdaxes/errors.hpp"
#include "scdaxes/random.hpp"

namespace scdaxes {

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Raw: return "raw";
    case TransformKind::Pca: return "pca";
    case TransformKind::Ica: return "ica";
  }
  return "unknown";
}

TransformKind parse_transform_kind(std::string_view name) {
  if (name == "raw") return TransformKind::Raw;
  if (name == "pca") return TransformKind::Pca;
  if (name == "ica") return TransformKind::Ica;
  throw FormatError("unknown transform kind \"" + std::string(name) + "\"");
}

namespace {

void require_finite(const Eigen::MatrixXd& X, const char* who) {
  if (!X.allFinite()) throw FormatError(std::string(who) + ": input contains NaN or Inf");
}

// Flip so that the largest-magnitude entry of the row is positive.
void canonical_sign(Eigen::MatrixXd& M, Eigen::Index i) {
  Eigen::Index arg = 0;
  M.row(i).cwiseAbs().maxCoeff(&arg);
  if (M(i, arg) < 0) M.row(i) *= -1.0;
}

// Row permutation by decreasing score; ties keep their original order.
std::vector<Eigen::Index> descending_order(const Eigen::VectorXd& scores) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return scores(a) > scores(b); });
  return order;
}

// W <- (W W^T)^{-1/2} W
Eigen::MatrixXd symmetric_decorrelation(const Eigen::MatrixXd& W) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(W * W.transpose());
  const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().cwiseInverse();
  return eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose() * W;
}

}  // namespace

AxisTransform fit_raw(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("fit_raw: dim must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  AxisTransform t;
  t.kind = TransformKind::Raw;
  t.mean = Eigen::VectorXd::Zero(d);
  t.components = Eigen::MatrixXd::Identity(d, d);
  t.axis_scores = Eigen::VectorXd::Ones(d);
  return t;
}

AxisTransform fit_pca(const Eigen::MatrixXd& X) {
  if (X.rows() < 2) throw UndefinedError("fit_pca: need at least 2 rows");
  if (X.cols() < 1) throw std::invalid_argument("fit_pca: need at least 1 column");
  require_finite(X, "fit_pca");

  AxisTransform t;
  t.kind = TransformKind::Pca;
  t.fitted_on = static_cast<std::size_t>(X.rows());
  t.mean = X.colwise().mean().transpose();
  const Eigen::MatrixXd centered = X.rowwise() - t.mean.transpose();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd power = svd.singularValues().array().square();
  const double total = power.sum();
  if (!(total > 0.0)) throw UndefinedError("fit_pca: data has zero variance");

  // Singular values come out sorted, so no permutation is needed.
  t.components = svd.matrixV().transpose();
  for (Eigen::Index i = 0; i < t.components.rows(); ++i) canonical_sign(t.components, i);
  t.axis_scores = power / total;
  return t;
}

IcaFit fit_ica_detailed(const Eigen::MatrixXd& X, const IcaConfig& cfg) {
  if (cfg.max_iter < 1) throw std::invalid_argument("fit_ica: max_iter must be >= 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("fit_ica: tol must be > 0");
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  const Eigen::Index k = cfg.n_components ? static_cast<Eigen::Index>(*cfg.n_components) : d;
  if (k < 1 || k > d) {
    throw std::invalid_argument("fit_ica: n_components must lie in [1, " + std::to_string(d) +
                                "]");
  }
  if (n < 2 || n < k) {
    throw UndefinedError("fit_ica: need at least max(2, n_components) rows, got " +
                         std::to_string(n));
  }
  require_finite(X, "fit_ica");

  const Eigen::VectorXd mean = X.colwise().mean().transpose();
  const Eigen::MatrixXd centered = X.rowwise() - mean.transpose();

  // Whitening from the covariance eigendecomposition, scaled to unit variance.
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd& evals = eig.eigenvalues();  // ascending
  const double largest = evals(d - 1);
  const double kth = evals(d - k);
  if (!(largest > 0.0) || kth <= largest * 1e-10) {
    throw UndefinedError("fit_ica: rank of the centred data is below n_components = " +
                         std::to_string(k) + "; cannot whiten");
  }
  Eigen::MatrixXd whitening(k, d);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index src = d - 1 - i;
    whitening.row(i) = eig.eigenvectors().col(src).transpose() / std::sqrt(evals(src));
    canonical_sign(whitening, i);
  }
  const Eigen::MatrixXd Z = whitening * centered.transpose();  // k x n
  const double inv_n = 1.0 / static_cast<double>(n);

  Xoshiro256 rng(cfg.seed);
  Eigen::MatrixXd W(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) W(i, j) = rng.normal();
  }
  W = symmetric_decorrelation(W);

  bool converged = false;
  int iterations = 0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    iterations = it + 1;
    const Eigen::ArrayXXd G = (W * Z).array().tanh();
    const Eigen::VectorXd g_prime_mean = (1.0 - G.square()).rowwise().mean().matrix();
    Eigen::MatrixXd W_next = G.matrix() * Z.transpose() * inv_n - g_prime_mean.asDiagonal() * W;
    W_next = symmetric_decorrelation(W_next);
    const double lim =
        ((W_next * W.transpose()).diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff();
    W = std::move(W_next);
    if (lim < cfg.tol) {
      converged = true;
      break;
    }
  }

  Eigen::MatrixXd unmixing = W * whitening;  // k x d
  const Eigen::MatrixXd sources = centered * unmixing.transpose();  // n x k
  Eigen::VectorXd skews(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::VectorXd col = sources.col(i);
    double s = skewness(std::span<const double>(col.data(), static_cast<std::size_t>(n)));
    if (s < 0.0) {
      unmixing.row(i) *= -1.0;
      W.row(i) *= -1.0;
      s = -s;
    }
    skews(i) = s;
  }

  const auto order = descending_order(skews);
  IcaFit fit;
  AxisTransform& t = fit.transform;
  t.kind = TransformKind::Ica;
  t.mean = mean;
  t.components.resize(k, d);
  t.axis_scores.resize(k);
  fit.whitened_unmixing.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    t.components.row(i) = unmixing.row(src);
    t.axis_scores(i) = skews(src);
    fit.whitened_unmixing.row(i) = W.row(src);
  }
  t.fitted_on = static_cast<std::size_t>(n);
  t.seed = cfg.seed;
  t.converged = converged;
  t.iterations = iterations;
  fit.whitening = whitening;
  return fit;
}

AxisTransform fit_ica(const Eigen::MatrixXd& X, const IcaConfig& cfg) {
  return fit_ica_detailed(X, cfg).transform;
}

double skewness(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*lo == *hi) return 0.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : x) {
    const double c = v - mean;
    const double c2 = c * c;
    m2 += c2;
    m3 += c2 * c;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  if (!(m2 > 0.0)) return 0.0;
  return m3 / (m2 * std::sqrt(m2));
}

std::size_t top_axis_count(std::size_t m, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("top fraction must lie in (0, 1], got " +
                                std::to_string(fraction));
  }
  // The epsilon absorbs products like 0.57 * 100 = 56.999999999999993.
  const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(m) + 1e-9));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(m, 1));
}

Eigen::MatrixXd project_axes(const AxisTransform& t, const Eigen::MatrixXd& X,
                             std::size_t n_axes) {
  if (static_cast<std::size_t>(X.cols()) != t.dim()) {
    throw FormatError("dimension mismatch: transform expects " + std::to_string(t.dim()) +
                      " columns, got " + std::to_string(X.cols()));
  }
  if (n_axes < 1 || n_axes > t.axis_count()) {
    throw std::invalid_argument("axis count must lie in [1, " +
                                std::to_string(t.axis_count()) + "], got " +
                                std::to_string(n_axes));
  }
  const auto k = static_cast<Eigen::Index>(n_axes);
  if (t.kind == TransformKind::Raw) return X.leftCols(k);
  return (X.rowwise() - t.mean.transpose()) * t.components.topRows(k).transpose();
}

Eigen::MatrixXd project(const AxisTransform& t, const Eigen::MatrixXd& X, double fraction) {
  return project_axes(t, X, top_axis_count(t.axis_count(), fraction));
}

}  // namespace scdaxes
