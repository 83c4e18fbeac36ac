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
#include <string>
#include <vector>

#include "scdaxes/embedstore.hpp"

namespace scdaxes {

/// One WiC-style instance: two occurrences of the same target word and
/// whether they carry the same meaning.
struct PairInstance {
  std::string instance_id;
  std::string row_a;
  std::string row_b;
  bool label = false;  // true = same meaning

  friend bool operator==(const PairInstance&, const PairInstance&) = default;
};

struct PairDataset {
  std::vector<PairInstance> instances;

  std::size_t size() const noexcept { return instances.size(); }
  friend bool operator==(const PairDataset&, const PairDataset&) = default;
};

/// Occurrence sets of one target word in two time periods, with optional
/// graded (change degree) and binary (changed / stable) gold annotations.
struct TemporalTarget {
  std::string lemma;
  std::vector<std::string> period1_rows;
  std::vector<std::string> period2_rows;
  std::optional<double> graded_gold;
  std::optional<bool> binary_gold;

  friend bool operator==(const TemporalTarget&, const TemporalTarget&) = default;
};

struct TemporalDataset {
  std::vector<TemporalTarget> targets;

  std::size_t size() const noexcept { return targets.size(); }
  friend bool operator==(const TemporalDataset&, const TemporalDataset&) = default;
};

// Structural checks that need no store. Errors name the 1-based line number
// the offending record occupies in the JSONL format.
void validate(const PairDataset& pairs);
void validate(const TemporalDataset& temporal);

// Reference checks against a store: every occurrence id must resolve.
void check_references(const PairDataset& pairs, const EmbeddingStore& store);
void check_references(const TemporalDataset& temporal, const EmbeddingStore& store);

PairDataset load_pairs(const std::filesystem::path& path);
PairDataset load_pairs(const std::filesystem::path& path, const EmbeddingStore& store);
TemporalDataset load_temporal(const std::filesystem::path& path);
TemporalDataset load_temporal(const std::filesystem::path& path,
                              const EmbeddingStore& store);

void save_pairs(const PairDataset& pairs, const std::filesystem::path& path);
void save_temporal(const TemporalDataset& temporal, const std::filesystem::path& path);

/// Store rows referenced by a dataset, deduplicated, in store order. This is
/// the default population transforms are fitted on.
std::vector<RowIndex> referenced_rows(const PairDataset& pairs,
                                      const EmbeddingStore& store);
std::vector<RowIndex> referenced_rows(const TemporalDataset& temporal,
                                      const EmbeddingStore& store);

}  // namespace scdaxes
