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

#include "scdaxes/contextual.hpp"
#include "scdaxes/datasets.hpp"
#include "scdaxes/embedstore.hpp"
#include "scdaxes/errors.hpp"
#include "scdaxes/metrics.hpp"
#include "scdaxes/parallel.hpp"
#include "scdaxes/random.hpp"
#include "scdaxes/temporal.hpp"
#include "scdaxes/transforms.hpp"

namespace scdaxes {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace scdaxes
