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

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scdaxes/errors.hpp"
#include "scdaxes/transforms.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace scdaxes {
namespace {

constexpr int kFormatVersion = 1;

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

void write_f64(const fs::path& path, const double* values, std::size_t count) {
  std::string bytes(count * sizeof(double), '\0');
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t word = to_le(std::bit_cast<std::uint64_t>(values[i]));
    std::memcpy(bytes.data() + i * sizeof(double), &word, sizeof(word));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::vector<double> read_f64(const fs::path& path, std::size_t expected_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = std::move(ss).str();
  if (bytes.size() != expected_count * sizeof(double)) {
    throw FormatError(path.string() + ": byte length " + std::to_string(bytes.size()) +
                      ", expected " + std::to_string(expected_count * sizeof(double)));
  }
  std::vector<double> values(expected_count);
  for (std::size_t i = 0; i < expected_count; ++i) {
    std::uint64_t word;
    std::memcpy(&word, bytes.data() + i * sizeof(double), sizeof(word));
    values[i] = std::bit_cast<double>(to_le(word));
    if (!std::isfinite(values[i])) {
      throw FormatError(path.string() + ": non-finite value at index " + std::to_string(i));
    }
  }
  return values;
}

}  // namespace

void save_transform(const AxisTransform& t, const fs::path& dir) {
  const std::size_t d = t.dim();
  const std::size_t m = t.axis_count();
  if (static_cast<std::size_t>(t.components.cols()) != d ||
      static_cast<std::size_t>(t.axis_scores.size()) != m) {
    throw std::invalid_argument("save_transform: inconsistent transform shapes");
  }
  fs::create_directories(dir);

  json meta = json::object();
  meta["format_version"] = kFormatVersion;
  meta["kind"] = std::string(to_string(t.kind));
  meta["dim"] = d;
  meta["m"] = m;
  meta["seed"] = t.seed ? json(*t.seed) : json(nullptr);
  meta["converged"] = t.converged;
  meta["iterations"] = t.iterations;
  meta["fitted_on"] = t.fitted_on;
  meta["axis_scores"] = std::vector<double>(t.axis_scores.data(), t.axis_scores.data() + m);
  {
    std::ofstream out(dir / "transform.json", std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + (dir / "transform.json").string());
    out << meta.dump(1) << '\n';
  }

  // Row-major on disk, Eigen is column-major in memory.
  std::vector<double> rows(m * d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      rows[i * d + j] = t.components(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  write_f64(dir / "components.f64", rows.data(), rows.size());
  write_f64(dir / "mean.f64", t.mean.data(), d);
}

AxisTransform load_transform(const fs::path& dir) {
  const fs::path meta_path = dir / "transform.json";
  std::ifstream in(meta_path);
  if (!in) throw FormatError("cannot open " + meta_path.string());
  json meta;
  try {
    meta = json::parse(in);
    AxisTransform t;
    if (meta.value("format_version", 0) != kFormatVersion) {
      throw FormatError(meta_path.string() + ": unsupported format_version");
    }
    t.kind = parse_transform_kind(meta.at("kind").get<std::string>());
    const auto d = meta.at("dim").get<std::size_t>();
    const auto m = meta.at("m").get<std::size_t>();
    if (d == 0 || m == 0 || m > d) {
      throw FormatError(meta_path.string() + ": need 1 <= m <= dim");
    }
    if (!meta.at("seed").is_null()) t.seed = meta.at("seed").get<std::uint64_t>();
    t.converged = meta.at("converged").get<bool>();
    t.iterations = meta.at("iterations").get<int>();
    t.fitted_on = meta.at("fitted_on").get<std::size_t>();
    const auto scores = meta.at("axis_scores").get<std::vector<double>>();
    if (scores.size() != m) {
      throw FormatError(meta_path.string() + ": axis_scores has wrong length");
    }
    for (std::size_t i = 1; i < m; ++i) {
      if (scores[i] > scores[i - 1]) {
        throw FormatError(meta_path.string() + ": axis_scores must be non-increasing");
      }
    }
    t.axis_scores = Eigen::Map<const Eigen::VectorXd>(scores.data(), static_cast<Eigen::Index>(m));

    const auto rows = read_f64(dir / "components.f64", m * d);
    t.components.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        t.components(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i * d + j];
      }
    }
    const auto mean = read_f64(dir / "mean.f64", d);
    t.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(d));

    if (t.kind == TransformKind::Raw &&
        (m != d || !t.components.isIdentity(0.0) || !t.mean.isZero(0.0))) {
      throw FormatError(meta_path.string() + ": raw transform must be the identity");
    }
    return t;
  } catch (const json::exception& e) {
    throw FormatError(meta_path.string() + ": " + e.what());
  }
}

}  // namespace scdaxes
