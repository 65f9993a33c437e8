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
#include "hypinit/distributions.hpp"

#include <cmath>

#include "hypinit/common.hpp"

namespace hypinit {

// ---------------------------------------------------------------------------
// Prng

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Prng::Prng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

Prng Prng::derive(std::initializer_list<std::uint64_t> labels) const {
  std::uint64_t h = mix64(seed_ ^ 0x6a09e667f3bcc908ULL);
  for (std::uint64_t label : labels) {
    h = mix64(h ^ mix64(label));
  }
  return Prng(h);
}

double Prng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Prng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform(); // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(angle);
  has_cached_normal_ = true;
  return r * std::cos(angle);
}

double Prng::log_gamma_draw(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw Error("gamma shape must be positive and finite");
  }
  if (shape < 1.0) {
    // G(a) = G(a + 1) * U^(1/a)
    const double u = 1.0 - uniform();
    return log_gamma_draw(shape + 1.0) + std::log(u) / shape;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      return std::log(d) + std::log(v);
    }
  }
}

double Prng::beta(double a, double b) {
  const double log_x = log_gamma_draw(a);
  const double log_y = log_gamma_draw(b);
  // x / (x + y) evaluated in log space.
  return 1.0 / (1.0 + std::exp(log_y - log_x));
}

std::uint64_t Prng::below(std::uint64_t n) {
  if (n == 0) {
    throw Error("Prng::below needs n > 0");
  }
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(engine_()) * n) >> 64);
}

// ---------------------------------------------------------------------------
// HyperParams

std::string_view to_string(Family family) {
  return family == Family::Beta ? "beta" : "gaussian";
}

Family parse_family(std::string_view name) {
  if (name == "beta") {
    return Family::Beta;
  }
  if (name == "gaussian") {
    return Family::Gaussian;
  }
  throw Error("unknown distribution family '" + std::string(name) + "'");
}

namespace {

std::vector<double> constrain(Family family, const std::vector<double> &u) {
  if (family == Family::Beta) {
    return {std::exp(u[0]), std::exp(u[1])};
  }
  return {u[0], std::exp(u[1])};
}

} // namespace

HyperParams::HyperParams(Family family, std::vector<double> internal,
                         std::vector<double> constrained)
    : family_(family), internal_(std::move(internal)),
      constrained_(std::move(constrained)) {
  if (internal_.size() != 2 || constrained_.size() != 2) {
    throw Error("hyperparameter vector must have two entries");
  }
  for (std::size_t k = 0; k < 2; ++k) {
    if (!std::isfinite(internal_[k]) || !std::isfinite(constrained_[k])) {
      throw Error("non-finite hyperparameter");
    }
  }
  if ((family_ == Family::Beta &&
       (constrained_[0] <= 0.0 || constrained_[1] <= 0.0)) ||
      (family_ == Family::Gaussian && constrained_[1] <= 0.0)) {
    throw Error("hyperparameter underflows its constrained range");
  }
}

HyperParams HyperParams::beta(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw Error("Beta hyperparameters must be positive");
  }
  return HyperParams(Family::Beta, {std::log(alpha), std::log(beta)},
                     {alpha, beta});
}

HyperParams HyperParams::gaussian(double mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(mu)) {
    throw Error("Gaussian needs finite mu and sigma > 0");
  }
  return HyperParams(Family::Gaussian, {mu, std::log(sigma)}, {mu, sigma});
}

HyperParams HyperParams::from_unconstrained(Family family,
                                            std::span<const double> values) {
  if (values.size() != 2) {
    throw Error("hyperparameter vector must have two entries");
  }
  std::vector<double> internal(values.begin(), values.end());
  for (double v : internal) {
    if (!std::isfinite(v)) {
      throw Error("non-finite hyperparameter");
    }
  }
  auto constrained = constrain(family, internal);
  return HyperParams(family, std::move(internal), std::move(constrained));
}

std::vector<std::string> HyperParams::names() const {
  if (family_ == Family::Beta) {
    return {"alpha", "beta"};
  }
  return {"mu", "sigma"};
}

std::vector<double> to_unconstrained(const HyperParams &hp) {
  return {hp.unconstrained().begin(), hp.unconstrained().end()};
}

HyperParams from_unconstrained(Family family, std::span<const double> values) {
  return HyperParams::from_unconstrained(family, values);
}

std::vector<double> sample_params(const HyperParams &hp, std::size_t p,
                                  Prng &rng, double beta_scale) {
  if (p < 1) {
    throw Error("sample_params needs p >= 1");
  }
  const auto c = hp.constrained();
  std::vector<double> theta(p);
  if (hp.family() == Family::Gaussian) {
    const double sigma = std::max(c[1], kSigmaFloor);
    for (double &t : theta) {
      t = c[0] + sigma * rng.normal();
    }
  } else {
    for (double &t : theta) {
      t = beta_scale * rng.beta(c[0], c[1]);
    }
  }
  return theta;
}

HyperParams init_guess(Family family, Prng &rng) {
  if (family == Family::Gaussian) {
    const double mu = rng.uniform(0.1, 0.5);
    const double sigma = rng.uniform(0.5, 1.0);
    return HyperParams::gaussian(mu, sigma);
  }
  const double log_alpha = std::log(rng.uniform(1.0, 5.0));
  const double log_beta = std::log(rng.uniform(1.0, 5.0));
  return HyperParams::from_unconstrained(Family::Beta,
                                         std::vector{log_alpha, log_beta});
}

HyperParams manual_baseline(Family family) {
  return family == Family::Beta ? HyperParams::beta(0.1, 1.5)
                                : HyperParams::gaussian(0.0, 1.0);
}

HyperParams uniform_baseline() { return HyperParams::beta(1.0, 1.0); }

} // namespace hypinit
