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
#include <functional>

namespace scdaxes {

/// Number of worker threads to use. Defaults to the hardware concurrency and
/// is capped by the SCD_AXES_THREADS environment variable when set.
std::size_t worker_count();

/// Runs body(i) for every i in [0, n) on up to worker_count() threads.
/// Work is split into contiguous blocks; callers must write results only to
/// slot i so the outcome does not depend on the partitioning. The first
/// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace scdaxes
