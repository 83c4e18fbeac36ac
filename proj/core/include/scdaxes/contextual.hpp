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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "scdaxes/datasets.hpp"
#include "scdaxes/embedstore.hpp"
#include "scdaxes/metrics.hpp"
#include "scdaxes/transforms.hpp"

namespace scdaxes {

inline constexpr std::size_t kDefaultDisplayedAxes = 50;

/// Per-instance differences projected(a) - projected(b), one row per pair
/// instance. Rows hold every same-meaning instance first, then the others,
/// each block in dataset order.
struct DiffMatrix {
  std::vector<std::string> row_order;
  std::vector<bool> labels;
  std::size_t n_true = 0;
  Eigen::MatrixXd values;  // instances x displayed axes
  bool normalized = false;

  std::size_t rows() const noexcept { return row_order.size(); }
  std::size_t axes() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Min-max scales every column to [0, 1] in place; constant columns become 0.
void normalize_columns(Eigen::MatrixXd& values);

DiffMatrix diff_matrix(const EmbeddingStore& store, const PairDataset& pairs,
                       const AxisTransform& transform, double top_fraction,
                       bool normalize,
                       std::size_t max_axes_displayed = kDefaultDisplayedAxes);

struct PairDistance {
  std::string instance_id;
  double distance = 0.0;
  bool label = false;
};

/// Euclidean distance between the two projected occurrences of every pair,
/// in dataset order.
std::vector<PairDistance> wic_distances(const EmbeddingStore& store,
                                        const PairDataset& pairs,
                                        const AxisTransform& transform,
                                        double top_fraction);

/// ROC for "same meaning" predicted when distance <= threshold. Point
/// thresholds are reported as distances.
RocResult wic_roc(std::span<const PairDistance> distances);

/// Header "instance_id,label,0,1,...", one row per instance in row_order.
void write_diff_csv(const DiffMatrix& m, std::ostream& out);

/// Self-contained SVG: one grey rect per cell (white = 1), a red rule
/// between the same-meaning and different-meaning blocks. Unnormalized
/// matrices are min-max scaled over all cells for display.
void write_diff_svg(const DiffMatrix& m, std::ostream& out);

}  // namespace scdaxes
