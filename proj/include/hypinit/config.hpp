// Copyright 2026 The hypinit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hypinit {

using Json = nlohmann::json;

/// The full default configuration. Every accepted key appears here.
const Json &default_config();

/// Checks `config` against the defaults: unknown keys and type mismatches
/// throw with the offending key path.
void validate_config(const Json &config);

/// Defaults overlaid with a user tree. The result is validated.
Json merge_config(const Json &user);

Json load_config_file(const std::filesystem::path &path);

/// Applies `a.b.c=value`. The value is parsed as JSON when possible and
/// taken as a string otherwise.
void apply_override(Json &config, std::string_view assignment);

/// Dotted-path lookup with a typed error on missing keys.
const Json &at_path(const Json &config, std::string_view path);

} // namespace hypinit
