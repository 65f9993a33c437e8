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
#include <numbers>
#include <span>
#include <vector>

#include "hypinit/linalg.hpp"
#include "hypinit/simulator.hpp"

namespace hypinit {

/// dC/dtheta_mu for every circuit parameter.
struct Gradient {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double squared_norm() const;
};

enum class QfimFidelity { Exact, BlockDiagonal, Empirical };

std::string_view to_string(QfimFidelity fidelity);

struct QfimMatrix {
  Matrix entries;
  QfimFidelity fidelity = QfimFidelity::Exact;
};

/// Above this many parameters the exact QFIM is not attempted.
inline constexpr std::size_t kExactQfimMaxParams = 64;
inline constexpr double kDefaultStabilizer = 1e-6;
inline constexpr double kShift = std::numbers::pi / 2;

/// A scalar cost over circuit parameters with a parameter-shift gradient.
class Objective {
public:
  virtual ~Objective() = default;
  virtual std::size_t num_params() const = 0;
  virtual double value(std::span<const double> theta) const = 0;
  virtual Gradient gradient(std::span<const double> theta,
                            int workers = 1) const = 0;
};

/// C(theta) = <psi(theta)|O|psi(theta)>.
class ObservableObjective final : public Objective {
public:
  ObservableObjective(Circuit circuit, Observable observable);

  std::size_t num_params() const override { return circuit_.num_params(); }
  double value(std::span<const double> theta) const override;
  Gradient gradient(std::span<const double> theta,
                    int workers = 1) const override;

  const Circuit &circuit() const { return circuit_; }
  const Observable &observable() const { return observable_; }

private:
  Circuit circuit_;
  Observable observable_;
};

/// Called once per (parameter slot, shift sign) with the final amplitudes of
/// the circuit evaluated at theta + sign * (pi/2) e_slot. Invocations for
/// different slots may run concurrently; each slot's two calls come from the
/// same thread, + before -.
using ShiftVisitor =
    std::function<void(int slot, int sign, std::span<const cplx> amps)>;

/// Parameter-shift sweep over the gates [gate_begin, gate_end) of `circuit`.
/// `initial` is the register (with `batch` interleaved columns) as it stands
/// before gate_begin; gates after gate_end are not applied. The unshifted
/// prefix is shared between successive parameters.
void for_each_shifted_state(const Circuit &circuit,
                            std::span<const double> theta,
                            std::span<const double> features,
                            std::span<const cplx> initial, std::size_t batch,
                            std::size_t gate_begin, std::size_t gate_end,
                            int workers, const ShiftVisitor &visitor);

/// Parameter-shift gradient of <O>:
/// g_mu = [C(theta + pi/2 e_mu) - C(theta - pi/2 e_mu)] / 2.
Gradient gradient(const Circuit &circuit, std::span<const double> theta,
                  const Observable &obs, std::span<const double> features = {},
                  int workers = 1);

/// Pure-state QFIM from shifted states. Throws when p > kExactQfimMaxParams.
QfimMatrix qfim_exact(const Circuit &circuit, std::span<const double> theta,
                      std::span<const double> features = {}, int workers = 1);

/// Per-layer blocks of the QFIM; cross-layer entries are zero. Every
/// parameterized gate must carry a layer tag.
QfimMatrix qfim_block_diagonal(const Circuit &circuit,
                               std::span<const double> theta,
                               std::span<const double> features = {},
                               int workers = 1);

/// g g^T.
QfimMatrix qfim_empirical(const Gradient &gradient);

/// Exact up to kExactQfimMaxParams, then block-diagonal for layered circuits,
/// then empirical from `objective` (required in that last case).
QfimMatrix qfim_auto(const Circuit &circuit, std::span<const double> theta,
                     const Objective *objective, int workers = 1);

/// F + eps I. Throws for eps <= 0.
QfimMatrix stabilize(const QfimMatrix &qfim, double eps);

} // namespace hypinit
