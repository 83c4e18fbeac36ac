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

#include "scdaxes/embedstore.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "scdaxes/errors.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace scdaxes {

EmbeddingStore::EmbeddingStore(std::size_t dim, std::vector<std::string> row_ids,
                               std::vector<float> data)
    : dim_(dim), row_ids_(std::move(row_ids)), data_(std::move(data)) {
  if (dim_ == 0) throw FormatError("embedding store: dim must be positive");
  if (data_.size() != row_ids_.size() * dim_) {
    throw FormatError("embedding store: expected " + std::to_string(row_ids_.size()) +
                      " x " + std::to_string(dim_) + " values, got " +
                      std::to_string(data_.size()));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      const std::size_t r = i / dim_;
      throw FormatError("embedding store: non-finite value at row " + std::to_string(r) +
                        " (id \"" + row_ids_[r] + "\"), column " +
                        std::to_string(i % dim_));
    }
  }
  index_.reserve(row_ids_.size());
  for (std::size_t r = 0; r < row_ids_.size(); ++r) {
    if (!index_.emplace(row_ids_[r], r).second) {
      throw FormatError("embedding store: duplicate row id \"" + row_ids_[r] + "\"");
    }
  }
}

std::span<const float> EmbeddingStore::row(RowIndex i) const {
  if (i >= count()) throw std::out_of_range("embedding store: row index out of range");
  return std::span<const float>(data_).subspan(i * dim_, dim_);
}

std::optional<RowIndex> EmbeddingStore::find(std::string_view id) const {
  // Heterogeneous lookup on unordered_map needs a transparent hasher; ids are
  // short so the temporary string is fine.
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RowIndex EmbeddingStore::index_of(std::string_view id) const {
  if (auto r = find(id)) return *r;
  throw FormatError("unknown occurrence id \"" + std::string(id) + "\"");
}

Eigen::MatrixXd EmbeddingStore::gather(std::span<const RowIndex> rows) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = row(rows[i]);
    for (std::size_t j = 0; j < dim_; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = src[j];
    }
  }
  return out;
}

Eigen::MatrixXd EmbeddingStore::to_matrix() const {
  using RowMajorF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajorF> view(data_.data(), static_cast<Eigen::Index>(count()),
                                   static_cast<Eigen::Index>(dim_));
  return view.cast<double>();
}

bool operator==(const EmbeddingStore& a, const EmbeddingStore& b) {
  if (a.dim_ != b.dim_ || a.row_ids_ != b.row_ids_) return false;
  // Bitwise comparison: -0.0f and 0.0f are different stores.
  return a.data_.size() == b.data_.size() &&
         std::memcmp(a.data_.data(), b.data_.data(), a.data_.size() * sizeof(float)) == 0;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  }
  return v;
}

template <typename T>
T require_field(const json& obj, const char* key, const fs::path& file) {
  if (!obj.contains(key)) {
    throw FormatError(file.string() + ": missing field \"" + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(file.string() + ": bad field \"" + key + "\": " + e.what());
  }
}

}  // namespace

EmbeddingStore load_store(const fs::path& path) {
  if (fs::is_directory(path)) return load_store_binary(path);
  if (fs::is_regular_file(path)) return load_store_csv(path);
  throw FormatError("no embedding store at " + path.string());
}

EmbeddingStore load_store_binary(const fs::path& dir) {
  const fs::path meta_path = dir / "meta.json";
  json meta;
  try {
    meta = json::parse(read_file(meta_path));
  } catch (const json::parse_error& e) {
    throw FormatError(meta_path.string() + ": malformed JSON: " + e.what());
  }
  if (!meta.is_object()) throw FormatError(meta_path.string() + ": expected an object");

  const auto dim = require_field<std::int64_t>(meta, "dim", meta_path);
  const auto count = require_field<std::int64_t>(meta, "count", meta_path);
  auto row_ids = require_field<std::vector<std::string>>(meta, "row_ids", meta_path);
  if (dim <= 0) throw FormatError(meta_path.string() + ": dim must be positive");
  if (count < 0) throw FormatError(meta_path.string() + ": count must be non-negative");
  if (row_ids.size() != static_cast<std::size_t>(count)) {
    throw FormatError(meta_path.string() + ": count is " + std::to_string(count) +
                      " but row_ids has " + std::to_string(row_ids.size()) + " entries");
  }
  if (meta.contains("dtype") && meta["dtype"] != "f32le") {
    throw FormatError(meta_path.string() + ": unsupported dtype " + meta["dtype"].dump());
  }
  if (meta.contains("layout") && meta["layout"] != "row-major") {
    throw FormatError(meta_path.string() + ": unsupported layout " + meta["layout"].dump());
  }

  const fs::path payload_path = dir / "embeddings.f32";
  const std::string bytes = read_file(payload_path);
  const std::size_t expected = static_cast<std::size_t>(count) *
                               static_cast<std::size_t>(dim) * sizeof(float);
  if (bytes.size() != expected) {
    throw FormatError(payload_path.string() + ": byte length " +
                      std::to_string(bytes.size()) + " does not match count*dim*4 = " +
                      std::to_string(expected));
  }
  std::vector<float> data(static_cast<std::size_t>(count) * static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::uint32_t word;
    std::memcpy(&word, bytes.data() + i * sizeof(float), sizeof(word));
    data[i] = std::bit_cast<float>(to_le(word));
  }
  return EmbeddingStore(static_cast<std::size_t>(dim), std::move(row_ids), std::move(data));
}

void save_store(const EmbeddingStore& store, const fs::path& dir) {
  fs::create_directories(dir);
  json meta = {{"dim", store.dim()},
               {"count", store.count()},
               {"row_ids", store.row_ids()},
               {"dtype", "f32le"},
               {"layout", "row-major"}};
  {
    std::ofstream out(dir / "meta.json", std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + (dir / "meta.json").string());
    out << meta.dump(1) << '\n';
  }
  std::string bytes(store.data().size() * sizeof(float), '\0');
  for (std::size_t i = 0; i < store.data().size(); ++i) {
    const std::uint32_t word = to_le(std::bit_cast<std::uint32_t>(store.data()[i]));
    std::memcpy(bytes.data() + i * sizeof(float), &word, sizeof(word));
  }
  std::ofstream out(dir / "embeddings.f32", std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + (dir / "embeddings.f32").string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("short write to " + (dir / "embeddings.f32").string());
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

EmbeddingStore load_store_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw FormatError("cannot open " + file.string());

  auto where = [&](std::size_t line_no) {
    return file.string() + ":" + std::to_string(line_no) + ": ";
  };

  std::string line;
  if (!std::getline(in, line)) throw FormatError(file.string() + ": empty CSV store");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_commas(line);
  if (header.size() < 2 || header[0] != "id") {
    throw FormatError(where(1) + "header must be id,v0,...,v{d-1}");
  }
  const std::size_t dim = header.size() - 1;
  for (std::size_t j = 0; j < dim; ++j) {
    if (header[j + 1] != "v" + std::to_string(j)) {
      throw FormatError(where(1) + "expected column v" + std::to_string(j) + ", got \"" +
                        std::string(header[j + 1]) + "\"");
    }
  }

  std::vector<std::string> ids;
  std::vector<float> data;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (ids.size() == kMaxCsvRows) {
      throw FormatError(file.string() + ": CSV stores are limited to " +
                        std::to_string(kMaxCsvRows) + " rows; use the binary format");
    }
    const auto fields = split_commas(line);
    if (fields.size() != dim + 1) {
      throw FormatError(where(line_no) + "expected " + std::to_string(dim + 1) +
                        " fields, got " + std::to_string(fields.size()));
    }
    ids.emplace_back(fields[0]);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto field = fields[j + 1];
      float v = 0.0f;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw FormatError(where(line_no) + "cannot parse \"" + std::string(field) +
                          "\" as a float");
      }
      data.push_back(v);
    }
  }
  return EmbeddingStore(dim, std::move(ids), std::move(data));
}

void save_store_csv(const EmbeddingStore& store, const fs::path& file) {
  if (store.count() > kMaxCsvRows) {
    throw FormatError("CSV stores are limited to " + std::to_string(kMaxCsvRows) + " rows");
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + file.string());
  out << "id";
  for (std::size_t j = 0; j < store.dim(); ++j) out << ",v" << j;
  out << '\n';
  std::array<char, 64> buf{};
  for (std::size_t r = 0; r < store.count(); ++r) {
    const auto& id = store.row_ids()[r];
    if (id.find_first_of(",\r\n") != std::string::npos) {
      throw FormatError("row id \"" + id + "\" cannot be written to CSV");
    }
    out << id;
    for (float v : store.row(r)) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
      out << ',' << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
    }
    out << '\n';
  }
}

}  // namespace scdaxes
