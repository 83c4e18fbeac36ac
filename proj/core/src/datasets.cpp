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

#include "scdaxes/datasets.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <unordered_set>

#include <json.hpp>

#include "scdaxes/errors.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace scdaxes {
namespace {

std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

std::string get_string(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(at_line(line_no) + "missing field \"" + key + "\"");
  if (!it->is_string()) {
    throw FormatError(at_line(line_no) + "field \"" + key + "\" must be a string");
  }
  return it->get<std::string>();
}

bool as_bool(const json& v, const char* key, std::size_t line_no) {
  if (v.is_boolean()) return v.get<bool>();
  // Integer 0/1 annotations are accepted as well.
  if (v.is_number_integer()) {
    const auto i = v.get<std::int64_t>();
    if (i == 0 || i == 1) return i == 1;
  }
  throw FormatError(at_line(line_no) + "field \"" + key + "\" must be a boolean");
}

std::vector<std::string> get_id_list(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(at_line(line_no) + "missing field \"" + key + "\"");
  if (!it->is_array()) {
    throw FormatError(at_line(line_no) + "field \"" + key + "\" must be an array");
  }
  std::vector<std::string> ids;
  ids.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw FormatError(at_line(line_no) + "field \"" + key + "\" must hold strings");
    }
    ids.push_back(v.get<std::string>());
  }
  return ids;
}

void validate_instance(const PairInstance& inst, std::size_t line_no) {
  if (inst.instance_id.empty()) throw FormatError(at_line(line_no) + "empty instance_id");
  if (inst.row_a.empty() || inst.row_b.empty()) {
    throw FormatError(at_line(line_no) + "empty occurrence id");
  }
  if (inst.row_a == inst.row_b) {
    throw FormatError(at_line(line_no) + "row_a and row_b are both \"" + inst.row_a + "\"");
  }
}

void validate_target(const TemporalTarget& t, std::size_t line_no) {
  if (t.lemma.empty()) throw FormatError(at_line(line_no) + "empty lemma");
  if (t.period1_rows.empty()) {
    throw FormatError(at_line(line_no) + "target \"" + t.lemma + "\": empty period1_rows");
  }
  if (t.period2_rows.empty()) {
    throw FormatError(at_line(line_no) + "target \"" + t.lemma + "\": empty period2_rows");
  }
  for (const auto* rows : {&t.period1_rows, &t.period2_rows}) {
    for (const auto& id : *rows) {
      if (id.empty()) {
        throw FormatError(at_line(line_no) + "target \"" + t.lemma + "\": empty occurrence id");
      }
    }
  }
  std::unordered_set<std::string_view> first(t.period1_rows.begin(), t.period1_rows.end());
  for (const auto& id : t.period2_rows) {
    if (first.contains(id)) {
      throw FormatError(at_line(line_no) + "target \"" + t.lemma + "\": occurrence \"" +
                        id + "\" appears in both periods");
    }
  }
  if (t.graded_gold && !std::isfinite(*t.graded_gold)) {
    throw FormatError(at_line(line_no) + "target \"" + t.lemma + "\": non-finite graded_gold");
  }
}

void check_id(const EmbeddingStore& store, const std::string& id, std::size_t line_no) {
  if (!store.contains(id)) {
    throw FormatError(at_line(line_no) + "dangling occurrence id \"" + id + "\"");
  }
}

void check_instance_refs(const PairInstance& inst, const EmbeddingStore& store,
                         std::size_t line_no) {
  check_id(store, inst.row_a, line_no);
  check_id(store, inst.row_b, line_no);
}

void check_target_refs(const TemporalTarget& t, const EmbeddingStore& store,
                       std::size_t line_no) {
  for (const auto& id : t.period1_rows) check_id(store, id, line_no);
  for (const auto& id : t.period2_rows) check_id(store, id, line_no);
}

template <typename OnRecord>
void read_jsonl(const fs::path& path, OnRecord&& on_record) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(path.string() + ": " + at_line(line_no) + "malformed JSON: " +
                        e.what());
    }
    if (!obj.is_object()) {
      throw FormatError(path.string() + ": " + at_line(line_no) + "expected a JSON object");
    }
    try {
      on_record(obj, line_no);
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
  }
}

PairDataset load_pairs_impl(const fs::path& path, const EmbeddingStore* store) {
  PairDataset out;
  read_jsonl(path, [&](const json& obj, std::size_t line_no) {
    PairInstance inst;
    inst.instance_id = get_string(obj, "instance_id", line_no);
    inst.row_a = get_string(obj, "row_a", line_no);
    inst.row_b = get_string(obj, "row_b", line_no);
    auto label = obj.find("label");
    if (label == obj.end()) throw FormatError(at_line(line_no) + "missing field \"label\"");
    inst.label = as_bool(*label, "label", line_no);
    validate_instance(inst, line_no);
    if (store != nullptr) check_instance_refs(inst, *store, line_no);
    out.instances.push_back(std::move(inst));
  });
  return out;
}

TemporalDataset load_temporal_impl(const fs::path& path, const EmbeddingStore* store) {
  TemporalDataset out;
  std::unordered_set<std::string> lemmas;
  read_jsonl(path, [&](const json& obj, std::size_t line_no) {
    TemporalTarget t;
    t.lemma = get_string(obj, "lemma", line_no);
    t.period1_rows = get_id_list(obj, "period1_rows", line_no);
    t.period2_rows = get_id_list(obj, "period2_rows", line_no);
    if (auto g = obj.find("graded_gold"); g != obj.end() && !g->is_null()) {
      if (!g->is_number()) {
        throw FormatError(at_line(line_no) + "field \"graded_gold\" must be a number");
      }
      t.graded_gold = g->get<double>();
    }
    if (auto b = obj.find("binary_gold"); b != obj.end() && !b->is_null()) {
      t.binary_gold = as_bool(*b, "binary_gold", line_no);
    }
    validate_target(t, line_no);
    if (!lemmas.insert(t.lemma).second) {
      throw FormatError(at_line(line_no) + "duplicate lemma \"" + t.lemma + "\"");
    }
    if (store != nullptr) check_target_refs(t, *store, line_no);
    out.targets.push_back(std::move(t));
  });
  return out;
}

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

}  // namespace

void validate(const PairDataset& pairs) {
  for (std::size_t i = 0; i < pairs.instances.size(); ++i) {
    validate_instance(pairs.instances[i], i + 1);
  }
}

void validate(const TemporalDataset& temporal) {
  std::unordered_set<std::string_view> lemmas;
  for (std::size_t i = 0; i < temporal.targets.size(); ++i) {
    validate_target(temporal.targets[i], i + 1);
    if (!lemmas.insert(temporal.targets[i].lemma).second) {
      throw FormatError(at_line(i + 1) + "duplicate lemma \"" + temporal.targets[i].lemma +
                        "\"");
    }
  }
}

void check_references(const PairDataset& pairs, const EmbeddingStore& store) {
  for (std::size_t i = 0; i < pairs.instances.size(); ++i) {
    check_instance_refs(pairs.instances[i], store, i + 1);
  }
}

void check_references(const TemporalDataset& temporal, const EmbeddingStore& store) {
  for (std::size_t i = 0; i < temporal.targets.size(); ++i) {
    check_target_refs(temporal.targets[i], store, i + 1);
  }
}

PairDataset load_pairs(const fs::path& path) { return load_pairs_impl(path, nullptr); }

PairDataset load_pairs(const fs::path& path, const EmbeddingStore& store) {
  return load_pairs_impl(path, &store);
}

TemporalDataset load_temporal(const fs::path& path) {
  return load_temporal_impl(path, nullptr);
}

TemporalDataset load_temporal(const fs::path& path, const EmbeddingStore& store) {
  return load_temporal_impl(path, &store);
}

void save_pairs(const PairDataset& pairs, const fs::path& path) {
  validate(pairs);
  auto out = open_for_write(path);
  for (const auto& inst : pairs.instances) {
    json line = json::object();
    line["instance_id"] = inst.instance_id;
    line["row_a"] = inst.row_a;
    line["row_b"] = inst.row_b;
    line["label"] = inst.label;
    out << line.dump() << '\n';
  }
}

void save_temporal(const TemporalDataset& temporal, const fs::path& path) {
  validate(temporal);
  auto out = open_for_write(path);
  for (const auto& t : temporal.targets) {
    json line = json::object();
    line["lemma"] = t.lemma;
    line["period1_rows"] = t.period1_rows;
    line["period2_rows"] = t.period2_rows;
    if (t.graded_gold) line["graded_gold"] = *t.graded_gold;
    if (t.binary_gold) line["binary_gold"] = *t.binary_gold;
    out << line.dump() << '\n';
  }
}

namespace {

std::vector<RowIndex> collect(const std::vector<bool>& used) {
  std::vector<RowIndex> rows;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) rows.push_back(i);
  }
  return rows;
}

}  // namespace

std::vector<RowIndex> referenced_rows(const PairDataset& pairs, const EmbeddingStore& store) {
  std::vector<bool> used(store.count(), false);
  for (const auto& inst : pairs.instances) {
    used[store.index_of(inst.row_a)] = true;
    used[store.index_of(inst.row_b)] = true;
  }
  return collect(used);
}

std::vector<RowIndex> referenced_rows(const TemporalDataset& temporal,
                                      const EmbeddingStore& store) {
  std::vector<bool> used(store.count(), false);
  for (const auto& t : temporal.targets) {
    for (const auto& id : t.period1_rows) used[store.index_of(id)] = true;
    for (const auto& id : t.period2_rows) used[store.index_of(id)] = true;
  }
  return collect(used);
}

}  // namespace scdaxes
