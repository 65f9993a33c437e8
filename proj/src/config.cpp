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
#include "hypinit/config.hpp"

#include <algorithm>
#include <fstream>

#include "hypinit/common.hpp"

namespace hypinit {
namespace {

Json build_defaults() {
  return Json::parse(R"({
    "seed": 0,
    "runtime": {"workers": 1},
    "ansatz": {"kind": "strongly_entangling", "layers": 8, "qubits": 4},
    "distribution": {"family": "beta", "beta_scale": 6.283185307179586},
    "score": {"kind": "S1", "omega": "trace", "t": 2, "w": 0.9,
              "eps": 1e-6, "k_eigs": 5, "harmonic_scale": 1.0},
    "es": {"eta": 0.05, "sigma": 0.1, "n_samples": 16, "n_iters": 50,
           "eps_converge": 1e-3, "antithetic": true, "use_utility": true,
           "theta_draws": 1, "init": null},
    "cost": {"z_qubits": [0, 1]},
    "methods": ["S1", "S2", "S3", "manual"],
    "train": {"lr": 0.01, "iters": 100},
    "vqe": {"hamiltonian": "data/hamiltonians/h2_0.7414.txt",
            "gap_threshold": 1e-2},
    "qml": {"dataset": "data/breast_cancer.csv", "label_column": "label",
            "pca_components": 4, "train_limit": 200, "score_batch": 32},
    "grad_profile": {"layers": 5, "qubits": 4, "samples": 200,
                     "hyper": [0.1, 1.5], "delta": 0.05, "bins": 20},
    "bp_scan": {"qubits": [2, 4, 6, 8], "layers": 5, "samples": 200,
                "cost": "projector",
                "methods": ["uniform", "manual", "S1", "S2", "S3"]}
  })");
}

std::string join(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

std::string type_name(const Json &j) {
  if (j.is_number_integer()) {
    return "integer";
  }
  return j.type_name();
}

void check(const Json &value, const Json &reference, const std::string &path) {
  if (reference.is_null()) {
    if (!value.is_null() &&
        !(value.is_array() &&
          std::all_of(value.begin(), value.end(),
                      [](const Json &v) { return v.is_number(); }))) {
      throw Error("config key '" + path +
                  "' must be null or an array of numbers");
    }
    return;
  }
  if (reference.is_object()) {
    if (!value.is_object()) {
      throw Error("config key '" + path + "' must be an object");
    }
    for (const auto &[key, child] : value.items()) {
      const auto it = reference.find(key);
      if (it == reference.end()) {
        throw Error("unknown config key '" + join(path, key) + "'");
      }
      check(child, *it, join(path, key));
    }
    return;
  }
  bool ok = false;
  if (reference.is_number_integer()) {
    ok = value.is_number_integer();
  } else if (reference.is_number()) {
    ok = value.is_number();
  } else if (reference.is_array()) {
    ok = value.is_array();
    if (ok && !reference.empty()) {
      for (const auto &item : value) {
        ok = ok && (reference.front().is_number_integer()
                        ? item.is_number_integer()
                        : std::string(item.type_name()) ==
                              reference.front().type_name());
      }
    }
  } else {
    ok = std::string(value.type_name()) == reference.type_name();
  }
  if (!ok) {
    throw Error("config key '" + path + "' expects " + type_name(reference) +
                ", got " + type_name(value));
  }
}

void overlay(Json &base, const Json &user) {
  for (const auto &[key, value] : user.items()) {
    if (value.is_object() && base[key].is_object()) {
      overlay(base[key], value);
    } else {
      base[key] = value;
    }
  }
}

} // namespace

const Json &default_config() {
  static const Json defaults = build_defaults();
  return defaults;
}

void validate_config(const Json &config) {
  check(config, default_config(), "");
}

Json merge_config(const Json &user) {
  validate_config(user);
  Json merged = default_config();
  overlay(merged, user);
  validate_config(merged);
  return merged;
}

Json load_config_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open config " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void apply_override(Json &config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error("override '" + std::string(assignment) +
                "' is not of the form key=value");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    value = text;
  }
  const Json *reference = &default_config();
  Json *node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (!reference->is_object() || !reference->contains(key)) {
      throw Error("unknown config key '" + path.substr(0, dot) + "'");
    }
    reference = &(*reference)[key];
    if (!node->is_object()) {
      *node = Json::object();
    }
    node = &(*node)[key];
    if (dot == std::string::npos) {
      break;
    }
    start = dot + 1;
  }
  check(value, *reference, path);
  *node = std::move(value);
}

const Json &at_path(const Json &config, std::string_view path) {
  const Json *node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key(path.substr(start, dot - start));
    if (!node->is_object() || !node->contains(key)) {
      throw Error("missing config key '" + std::string(path) + "'");
    }
    node = &(*node)[key];
    if (dot == std::string_view::npos) {
      return *node;
    }
    start = dot + 1;
  }
}

} // namespace hypinit
