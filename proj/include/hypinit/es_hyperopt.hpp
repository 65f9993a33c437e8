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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hypinit/distributions.hpp"
#include "hypinit/linalg.hpp"

namespace hypinit {

struct EsConfig {
  double eta = 0.05;           ///< ascent learning rate
  double sigma = 0.1;          ///< perturbation step size
  int n_samples = 16;          ///< population size per iteration
  int n_iters = 50;            ///< iteration cap
  double eps_converge = 1e-3;  ///< stop once ||lambda_{i+1} - lambda_i||_1 <= this
  bool antithetic = true;
  bool use_utility = true;
  int workers = 1;             ///< concurrent rollouts; results do not depend on it

  void validate() const;
};

struct EsIteration {
  int iteration = 0;
  std::vector<double> constrained;   ///< lambda after the update
  std::vector<double> unconstrained;
  double mean_score = 0.0;           ///< raw scores of this population
  double best_score = 0.0;
  double delta_l1 = 0.0;
};

struct EsTrace {
  std::vector<EsIteration> iterations;
  bool converged = false;
};

struct EsResult {
  HyperParams best;
  EsTrace trace;
};

/// Scores one perturbed hyperparameter setting. `rng` is the rollout's own
/// stream, used to draw theta ~ p(theta | lambda).
using RolloutScore = std::function<double(const HyperParams &, Prng &)>;

/// N_s x dim standard normal rows; with `antithetic` the second half is the
/// negated first half (row N/2 + j = -row j). Throws for odd N_s in that mode.
Matrix perturbation_matrix(std::size_t n_samples, std::size_t dim,
                           bool antithetic, Prng &rng);

/// (1 / (N_s sigma)) zeta^T Gamma. With `antithetic`, Gamma must be mirrored
/// as perturbation_matrix builds it and the pairs are summed first.
std::vector<double> search_gradient(std::span<const double> zeta,
                                    const Matrix &gamma, double sigma,
                                    bool antithetic = false);

/// One iteration's search-gradient estimate at `hp`: draws Gamma and the N_s
/// rollout scores from streams derived from (master, iteration), optionally
/// utility-shapes them, and returns the ascent direction. Exposed for tests.
std::vector<double> estimate_search_gradient(const RolloutScore &score,
                                             const HyperParams &hp,
                                             const EsConfig &cfg,
                                             const Prng &master,
                                             std::uint64_t iteration,
                                             std::vector<double> *raw_scores =
                                                 nullptr);

/// Evolution-strategy search over the unconstrained hyperparameters,
/// maximizing the score. Rollout j of iteration i draws from
/// master.derive({i, j}); rollouts run on cfg.workers threads and are reduced
/// in index order.
EsResult es_optimize(const RolloutScore &score, const HyperParams &hp0,
                     const EsConfig &cfg, const Prng &master);

} // namespace hypinit
