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

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace scdaxes::cli {

/// JSON run report. Everything in body() must be a pure function of the
/// inputs and flags; the rendered report carries a digest of that body.
/// Wall-clock timings are kept apart and only rendered on request, so reruns
/// produce byte-identical files.
class RunReport {
 public:
  explicit RunReport(std::string command);

  nlohmann::json& body() { return body_; }
  const nlohmann::json& body() const { return body_; }

  void add_timing(std::string stage, double milliseconds);

  /// sha256 of the compact serialization of body().
  std::string digest() const;
  std::string render(bool include_timings) const;
  void write(const std::filesystem::path& path, bool include_timings) const;

 private:
  nlohmann::json body_;
  std::vector<std::pair<std::string, double>> timings_;
};

}  // namespace scdaxes::cli
