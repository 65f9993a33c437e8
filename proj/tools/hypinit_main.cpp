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
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hypinit/commands.hpp"
#include "hypinit/common.hpp"
#include "hypinit/simd/kernels.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Hyperparameter search for parameterized quantum circuit "
               "initializers"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::string kernels;
  long long seed = -1;
  int workers = 0;

  const char *commands[][2] = {
      {"hypopt", "ES search for distribution hyperparameters"},
      {"vqe", "VQE training per initialization method"},
      {"qml", "Classifier training per initialization method"},
      {"grad-profile", "Per-layer gradient magnitude histograms"},
      {"bp-scan", "First-parameter gradient variance across qubit counts"},
  };
  for (const auto &[name, help] : commands) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", config_path, "JSON config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "Override a config key: a.b=value");
    sub->add_option("--seed", seed, "Master seed")->check(CLI::NonNegativeNumber);
    sub->add_option("-o,--out", out_dir, "Output directory (default runs/<command>)");
    sub->add_option("-w,--workers", workers, "Concurrent task cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--kernels", kernels, "scalar, avx2 or auto")
        ->check(CLI::IsMember({"scalar", "avx2", "auto"}));
  }
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!kernels.empty()) {
      hypinit::simd::select_kernels(kernels);
    }
    hypinit::Json config = hypinit::Json::object();
    if (!config_path.empty()) {
      config = hypinit::load_config_file(config_path);
      hypinit::validate_config(config);
    }
    for (const auto &assignment : overrides) {
      hypinit::apply_override(config, assignment);
    }
    if (seed >= 0) {
      config["seed"] = seed;
    }
    if (workers > 0) {
      config["runtime"]["workers"] = workers;
    }
    const hypinit::RunRecord record = hypinit::run_command(command, config);
    const std::string dir = out_dir.empty() ? "runs/" + command : out_dir;
    hypinit::write_record(record, dir);
    std::printf("%s: wrote %s/record.json (content hash %s)\n",
                command.c_str(), dir.c_str(), record.content_hash().c_str());
  } catch (const std::exception &e) {
    std::fprintf(stderr, "hypinit %s: %s\n", command.c_str(), e.what());
    return 1;
  }
  return 0;
}
