/*
 * Copyright 2026 The mpgsmooth Authors
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

// JSON forms of the generator specs, shared by the experiment config codec.

#include "json.hpp"
#include "mpg/random_instances.hpp"

namespace mpg::detail {

nlohmann::json graph_spec_json(const GraphSpec& s);
GraphSpec graph_spec_from(const nlohmann::json& j);
nlohmann::json distribution_json(const DistributionSpec& d);
DistributionSpec distribution_from(const nlohmann::json& j);

}  // namespace mpg::detail
