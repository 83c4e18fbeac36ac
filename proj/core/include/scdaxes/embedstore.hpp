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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace scdaxes {

using RowIndex = std::size_t;

/// Immutable n x d matrix of 32-bit embeddings, one row per target-word
/// occurrence, addressed by opaque occurrence ids.
///
/// Construction validates every invariant: dim > 0, data.size() == n * d,
/// all values finite, ids unique. Once built a store is never modified, so it
/// can be shared freely between threads.
class EmbeddingStore {
 public:
  /// Throws FormatError on any invariant violation.
  EmbeddingStore(std::size_t dim, std::vector<std::string> row_ids,
                 std::vector<float> data);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t count() const noexcept { return row_ids_.size(); }
  const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
  std::span<const float> data() const noexcept { return data_; }

  std::span<const float> row(RowIndex i) const;
  std::optional<RowIndex> find(std::string_view id) const;
  /// Like find(), but throws FormatError for unknown ids.
  RowIndex index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }

  /// Copies the given rows into a 64-bit matrix (one output row per index).
  Eigen::MatrixXd gather(std::span<const RowIndex> rows) const;
  /// All rows as a 64-bit matrix.
  Eigen::MatrixXd to_matrix() const;

  friend bool operator==(const EmbeddingStore& a, const EmbeddingStore& b);

 private:
  std::size_t dim_;
  std::vector<std::string> row_ids_;
  std::vector<float> data_;
  std::unordered_map<std::string, RowIndex> index_;
};

/// Hard limit on rows accepted from the CSV store format.
inline constexpr std::size_t kMaxCsvRows = 10000;

/// Loads a store. A directory is read as the binary format (meta.json plus
/// embeddings.f32); a regular file is read as CSV.
EmbeddingStore load_store(const std::filesystem::path& path);
EmbeddingStore load_store_binary(const std::filesystem::path& dir);
EmbeddingStore load_store_csv(const std::filesystem::path& file);

/// Writes meta.json + embeddings.f32 into dir (created if missing).
void save_store(const EmbeddingStore& store, const std::filesystem::path& dir);
/// Writes the CSV fallback format. Floats are printed in shortest
/// round-trip form, so load_store_csv(save_store_csv(s)) == s bit-for-bit.
void save_store_csv(const EmbeddingStore& store, const std::filesystem::path& file);

}  // namespace scdaxes
