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
#include "hypinit/es_hyperopt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypinit/common.hpp"
#include "hypinit/parallel.hpp"
#include "hypinit/scoring.hpp"

namespace hypinit {
namespace {

constexpr std::uint64_t kGammaStream = 0x67616d6d61ULL; // "gamma"

} // namespace

void EsConfig::validate() const {
  if (!(eta > 0.0)) throw Error("es.eta must be > 0");
  if (!(sigma > 0.0)) throw Error("es.sigma must be > 0");
  if (n_samples < 2) throw Error("es.n_samples must be >= 2");
  if (antithetic && n_samples % 2 != 0) {
    throw Error("es.n_samples must be even with antithetic sampling");
  }
  if (n_iters < 0) throw Error("es.n_iters must be >= 0");
  if (!(eps_converge > 0.0)) throw Error("es.eps_converge must be > 0");
  if (workers < 1) throw Error("workers must be >= 1");
}

Matrix perturbation_matrix(std::size_t n_samples, std::size_t dim,
                           bool antithetic, Prng &rng) {
  if (dim < 1 || n_samples < 1) {
    throw Error("perturbation matrix needs positive dimensions");
  }
  if (antithetic && n_samples % 2 != 0) {
    throw Error("antithetic sampling needs an even number of samples");
  }
  Matrix gamma(n_samples, dim);
  const std::size_t drawn = antithetic ? n_samples / 2 : n_samples;
  for (std::size_t r = 0; r < drawn; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      gamma(r, c) = rng.normal();
    }
  }
  if (antithetic) {
    for (std::size_t r = 0; r < drawn; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        gamma(drawn + r, c) = -gamma(r, c);
      }
    }
  }
  return gamma;
}

std::vector<double> search_gradient(std::span<const double> zeta,
                                    const Matrix &gamma, double sigma,
                                    bool antithetic) {
  if (zeta.size() != gamma.rows()) {
    throw Error("score count does not match the perturbation rows");
  }
  std::vector<double> grad(gamma.cols(), 0.0);
  if (antithetic) {
    // Row h + j is -row j, so each pair contributes (zeta_j - zeta_{h+j}) row j.
    const std::size_t half = gamma.rows() / 2;
    for (std::size_t j = 0; j < half; ++j) {
      const double diff = zeta[j] - zeta[half + j];
      for (std::size_t c = 0; c < gamma.cols(); ++c) {
        grad[c] += diff * gamma(j, c);
      }
    }
  } else {
    for (std::size_t j = 0; j < gamma.rows(); ++j) {
      for (std::size_t c = 0; c < gamma.cols(); ++c) {
        grad[c] += zeta[j] * gamma(j, c);
      }
    }
  }
  const double norm = 1.0 / (static_cast<double>(gamma.rows()) * sigma);
  for (double &g : grad) {
    g *= norm;
  }
  return grad;
}

std::vector<double> estimate_search_gradient(const RolloutScore &score,
                                             const HyperParams &hp,
                                             const EsConfig &cfg,
                                             const Prng &master,
                                             std::uint64_t iteration,
                                             std::vector<double> *raw_scores) {
  const std::size_t n = static_cast<std::size_t>(cfg.n_samples);
  const std::size_t dim = hp.size();
  Prng gamma_rng = master.derive({iteration, kGammaStream});
  const Matrix gamma = perturbation_matrix(n, dim, cfg.antithetic, gamma_rng);
  const auto base = hp.unconstrained();

  std::vector<double> scores(n);
  parallel_for(n, cfg.workers, [&](std::size_t j) {
    std::vector<double> perturbed(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      perturbed[c] = base[c] + cfg.sigma * gamma(j, c);
    }
    Prng rollout_rng = master.derive({iteration, j});
    try {
      scores[j] = score(HyperParams::from_unconstrained(hp.family(), perturbed),
                        rollout_rng);
    } catch (const std::exception &e) {
      throw Error("ES iteration " + std::to_string(iteration) + ", rollout " +
                  std::to_string(j) + ": " + e.what());
    }
    if (!std::isfinite(scores[j])) {
      throw Error("ES iteration " + std::to_string(iteration) + ", rollout " +
                  std::to_string(j) + ": non-finite score");
    }
  });
  if (raw_scores != nullptr) {
    *raw_scores = scores;
  }
  const std::vector<double> zeta =
      cfg.use_utility ? utility_shape(scores) : scores;
  return search_gradient(zeta, gamma, cfg.sigma, cfg.antithetic);
}

EsResult es_optimize(const RolloutScore &score, const HyperParams &hp0,
                     const EsConfig &cfg, const Prng &master) {
  cfg.validate();
  EsResult result{hp0, {}};
  std::vector<double> lambda = to_unconstrained(hp0);
  for (int i = 0; i < cfg.n_iters; ++i) {
    std::vector<double> raw;
    const auto grad = estimate_search_gradient(
        score, result.best, cfg, master, static_cast<std::uint64_t>(i), &raw);
    double delta = 0.0;
    for (std::size_t c = 0; c < lambda.size(); ++c) {
      const double step = cfg.eta * grad[c];
      lambda[c] += step;
      delta += std::abs(step);
    }
    for (double v : lambda) {
      if (!std::isfinite(v)) {
        throw Error("ES update produced a non-finite hyperparameter at "
                    "iteration " + std::to_string(i));
      }
    }
    result.best = HyperParams::from_unconstrained(hp0.family(), lambda);
    EsIteration record;
    record.iteration = i;
    const auto constrained = result.best.constrained();
    record.constrained.assign(constrained.begin(), constrained.end());
    record.unconstrained = lambda;
    record.mean_score = std::accumulate(raw.begin(), raw.end(), 0.0) /
                        static_cast<double>(raw.size());
    record.best_score = *std::max_element(raw.begin(), raw.end());
    record.delta_l1 = delta;
    result.trace.iterations.push_back(std::move(record));
    if (delta <= cfg.eps_converge) {
      result.trace.converged = true;
      break;
    }
  }
  return result;
}

} // namespace hypinit
