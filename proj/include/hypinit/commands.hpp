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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "hypinit/config.hpp"

namespace hypinit {

inline constexpr std::string_view kVersion = "hypinit 0.1.0";

struct RunRecord {
  std::string command;
  Json config;  ///< resolved, without the runtime section
  Json results;
  Json runtime; ///< workers, kernels, wall clock; excluded from the hash
  std::map<std::string, std::string> sidecars; ///< file name -> CSV text

  /// The reproducible part: version, command, config and results.
  Json hashable() const;
  /// FNV-1a 64 of hashable().dump(), as 16 hex digits.
  std::string content_hash() const;
  Json to_json() const;
};

RunRecord cmd_hypopt(const Json &config);
RunRecord cmd_vqe(const Json &config);
RunRecord cmd_qml(const Json &config);
RunRecord cmd_grad_profile(const Json &config);
RunRecord cmd_bp_scan(const Json &config);

/// Dispatch by command name ("hypopt", "vqe", "qml", "grad-profile",
/// "bp-scan"). The config is merged with the defaults first.
RunRecord run_command(std::string_view command, const Json &config);

/// Writes record.json and the CSV sidecars into `dir`, creating it.
void write_record(const RunRecord &record, const std::filesystem::path &dir);

std::uint64_t fnv1a64(std::string_view bytes);

} // namespace hypinit
