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

#include "report.hpp"

#include <fstream>

#include "digest.hpp"
#include "scdaxes/errors.hpp"
#include "scdaxes/scdaxes.hpp"

namespace scdaxes::cli {

RunReport::RunReport(std::string command) {
  body_ = nlohmann::json::object();
  body_["tool"] = "scd-axes";
  body_["tool_version"] = kVersion;
  body_["command"] = std::move(command);
}

void RunReport::add_timing(std::string stage, double milliseconds) {
  timings_.emplace_back(std::move(stage), milliseconds);
}

std::string RunReport::digest() const { return sha256_hex(body_.dump()); }

std::string RunReport::render(bool include_timings) const {
  nlohmann::json doc = body_;
  doc["report_digest"] = digest();
  if (include_timings) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [stage, ms] : timings_) t[stage] = ms;
    doc["timings_ms"] = std::move(t);
  }
  return doc.dump(2) + "\n";
}

void RunReport::write(const std::filesystem::path& path, bool include_timings) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << render(include_timings);
}

}  // namespace scdaxes::cli
