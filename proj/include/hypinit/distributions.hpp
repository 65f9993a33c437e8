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
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypinit/common.hpp"
#include "hypinit/random.hpp"

namespace hypinit {

enum class Family { Beta, Gaussian };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

inline constexpr double kDefaultBetaScale = 2.0 * std::numbers::pi;
/// Gaussian draws use max(sigma, kSigmaFloor) as the spread.
inline constexpr double kSigmaFloor = 1e-9;

/// Hyperparameters of an initializing distribution.
///
/// Stored in the unconstrained representation the search moves in:
/// Beta -> (log alpha, log beta), Gaussian -> (mu, log sigma). The
/// constrained view is kept alongside (exactly as given when constructed from
/// constrained values), so alpha, beta and sigma are positive by construction.
class HyperParams {
public:
  static HyperParams beta(double alpha, double beta);
  static HyperParams gaussian(double mu, double sigma);
  static HyperParams from_unconstrained(Family family,
                                        std::span<const double> values);

  Family family() const { return family_; }
  std::size_t size() const { return internal_.size(); }
  std::span<const double> unconstrained() const { return internal_; }
  std::span<const double> constrained() const { return constrained_; }
  /// "alpha","beta" or "mu","sigma".
  std::vector<std::string> names() const;

  bool operator==(const HyperParams &) const = default;

private:
  HyperParams(Family family, std::vector<double> internal,
              std::vector<double> constrained);

  Family family_;
  std::vector<double> internal_;
  std::vector<double> constrained_;
};

std::vector<double> to_unconstrained(const HyperParams &hp);
HyperParams from_unconstrained(Family family, std::span<const double> values);

/// theta_i ~ N(mu, sigma^2) (Box-Muller) or theta_i = scale * Beta(alpha,
/// beta) (two Marsaglia-Tsang gamma draws).
std::vector<double> sample_params(const HyperParams &hp, std::size_t p,
                                  Prng &rng,
                                  double beta_scale = kDefaultBetaScale);

/// Random starting point for the search: mu ~ U(0.1, 0.5),
/// sigma ~ U(0.5, 1.0); alpha, beta stored as log U(1, 5).
HyperParams init_guess(Family family, Prng &rng);

/// Beta(0.1, 1.5) or N(0, 1).
HyperParams manual_baseline(Family family);

/// Beta(1, 1); scaled by 2 pi this is the uniform [0, 2 pi) baseline.
HyperParams uniform_baseline();

} // namespace hypinit
