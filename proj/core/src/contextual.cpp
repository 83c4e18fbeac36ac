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

#include "scdaxes/contextual.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "scdaxes/errors.hpp"
#include "scdaxes/parallel.hpp"

namespace scdaxes {
namespace {

// Every store row a dataset references, projected once.
struct ProjectedPairs {
  std::vector<Eigen::Index> slot_a;
  std::vector<Eigen::Index> slot_b;
  Eigen::MatrixXd values;
};

ProjectedPairs project_pairs(const EmbeddingStore& store, const PairDataset& pairs,
                             const AxisTransform& transform, double top_fraction) {
  check_references(pairs, store);
  const auto rows = referenced_rows(pairs, store);
  std::vector<Eigen::Index> slot_of(store.count(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) slot_of[rows[i]] = static_cast<Eigen::Index>(i);

  ProjectedPairs out;
  out.values = project(transform, store.gather(rows), top_fraction);
  out.slot_a.reserve(pairs.size());
  out.slot_b.reserve(pairs.size());
  for (const auto& inst : pairs.instances) {
    out.slot_a.push_back(slot_of[store.index_of(inst.row_a)]);
    out.slot_b.push_back(slot_of[store.index_of(inst.row_b)]);
  }
  return out;
}

std::string_view shortest(double v, std::array<char, 32>& buf) {
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), static_cast<std::size_t>(ptr - buf.data())};
}

}  // namespace

void normalize_columns(Eigen::MatrixXd& values) {
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    auto col = values.col(c);
    if (col.size() == 0) continue;
    const double lo = col.minCoeff();
    const double hi = col.maxCoeff();
    if (hi > lo) {
      col = (col.array() - lo) / (hi - lo);
    } else {
      col.setZero();
    }
  }
}

DiffMatrix diff_matrix(const EmbeddingStore& store, const PairDataset& pairs,
                       const AxisTransform& transform, double top_fraction, bool normalize,
                       std::size_t max_axes_displayed) {
  if (max_axes_displayed == 0) {
    throw std::invalid_argument("diff_matrix: max_axes_displayed must be positive");
  }
  const ProjectedPairs projected = project_pairs(store, pairs, transform, top_fraction);
  const Eigen::Index shown =
      std::min<Eigen::Index>(static_cast<Eigen::Index>(max_axes_displayed),
                             projected.values.cols());

  std::vector<std::size_t> order;
  order.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs.instances[i].label) order.push_back(i);
  }
  const std::size_t n_true = order.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!pairs.instances[i].label) order.push_back(i);
  }

  DiffMatrix m;
  m.n_true = n_true;
  m.values.resize(static_cast<Eigen::Index>(order.size()), shown);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t i = order[r];
    m.row_order.push_back(pairs.instances[i].instance_id);
    m.labels.push_back(pairs.instances[i].label);
    m.values.row(static_cast<Eigen::Index>(r)) =
        projected.values.row(projected.slot_a[i]).head(shown) -
        projected.values.row(projected.slot_b[i]).head(shown);
  }
  if (normalize) normalize_columns(m.values);
  m.normalized = normalize;
  return m;
}

std::vector<PairDistance> wic_distances(const EmbeddingStore& store, const PairDataset& pairs,
                                        const AxisTransform& transform, double top_fraction) {
  const ProjectedPairs projected = project_pairs(store, pairs, transform, top_fraction);
  std::vector<PairDistance> out(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto& inst = pairs.instances[i];
    out[i].instance_id = inst.instance_id;
    out[i].label = inst.label;
    out[i].distance =
        (projected.values.row(projected.slot_a[i]) - projected.values.row(projected.slot_b[i]))
            .norm();
  });
  return out;
}

RocResult wic_roc(std::span<const PairDistance> distances) {
  std::vector<ScoredLabel> scores;
  scores.reserve(distances.size());
  for (const auto& d : distances) scores.push_back({-d.distance, d.label});
  RocResult roc = roc_from_scores(scores);
  for (auto& p : roc.points) p.threshold = -p.threshold;
  return roc;
}

void write_diff_csv(const DiffMatrix& m, std::ostream& out) {
  std::array<char, 32> buf{};
  out << "instance_id,label";
  for (std::size_t c = 0; c < m.axes(); ++c) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << m.row_order[r] << ',' << (m.labels[r] ? 1 : 0);
    for (std::size_t c = 0; c < m.axes(); ++c) {
      out << ',' << shortest(m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)), buf);
    }
    out << '\n';
  }
}

void write_diff_svg(const DiffMatrix& m, std::ostream& out) {
  constexpr int kCellWidth = 8;
  constexpr int kCellHeight = 2;
  const int width = static_cast<int>(m.axes()) * kCellWidth;
  const int height = static_cast<int>(m.rows()) * kCellHeight;

  double lo = 0.0;
  double hi = 1.0;
  if (!m.normalized && m.values.size() > 0) {
    lo = m.values.minCoeff();
    hi = m.values.maxCoeff();
  }
  auto grey = [&](double v) {
    const double unit = hi > lo ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.0;
    return static_cast<int>(std::lround(unit * 255.0));
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.axes(); ++c) {
      const int g = grey(m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
      out << "<rect x=\"" << c * kCellWidth << "\" y=\"" << r * kCellHeight << "\" width=\""
          << kCellWidth << "\" height=\"" << kCellHeight << "\" style=\"fill:rgb(" << g << ','
          << g << ',' << g << ")\"/>\n";
    }
  }
  const std::size_t rule_y = m.n_true * kCellHeight;
  out << "<line x1=\"0\" y1=\"" << rule_y << "\" x2=\"" << width << "\" y2=\"" << rule_y
      << "\" style=\"stroke:rgb(255,0,0);stroke-width:1\"/>\n";
  out << "</svg>\n";
}

}  // namespace scdaxes
