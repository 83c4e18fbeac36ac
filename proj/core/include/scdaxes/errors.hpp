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

#include <stdexcept>
#include <string>

namespace scdaxes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unreadable files, bad JSON, byte-length
/// mismatches, non-finite values, duplicate or dangling occurrence ids.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A quantity that is mathematically undefined for the given input, e.g. an
/// ROC curve over a single class, Spearman's rho of a constant vector, or a
/// whitening step over a rank-deficient matrix.
class UndefinedError : public Error {
 public:
  using Error::Error;
};

}  // namespace scdaxes
