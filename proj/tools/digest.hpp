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
#include <vector>

namespace scdaxes::cli {

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 over the concatenated contents of the given files, in order.
std::string sha256_files(const std::vector<std::filesystem::path>& files);

/// Content digest of a store path (binary directory or CSV file), a JSONL
/// dataset, or a transform directory.
std::string digest_store(const std::filesystem::path& path);
std::string digest_file(const std::filesystem::path& path);
std::string digest_transform(const std::filesystem::path& dir);

}  // namespace scdaxes::cli
