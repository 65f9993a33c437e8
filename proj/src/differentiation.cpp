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
#include "hypinit/differentiation.hpp"

#include <algorithm>
#include <cmath>

#include "hypinit/parallel.hpp"

namespace hypinit {
namespace {

void check_finite(const Gradient &g) {
  for (double v : g.values) {
    if (!std::isfinite(v)) {
      throw Error("gradient has a non-finite entry");
    }
  }
}

void check_theta(const Circuit &circuit, std::span<const double> theta) {
  if (theta.size() != circuit.num_params()) {
    throw Error("theta has " + std::to_string(theta.size()) +
                " entries, circuit expects " +
                std::to_string(circuit.num_params()));
  }
}

// QFIM block over the slots owned by gates [begin, end), given the register
// state before `begin`. `slot_index` maps a slot to its row in the block
// (-1 for slots outside the block).
Matrix qfim_block(const Circuit &circuit, std::span<const double> theta,
                  std::span<const double> features,
                  std::span<const cplx> initial, std::size_t begin,
                  std::size_t end, const std::vector<int> &slot_index,
                  std::size_t block_size, int workers) {
  const std::size_t dim = initial.size();
  std::vector<cplx> psi(initial.begin(), initial.end());
  apply_gates(psi, 1, circuit, begin, end, theta, features);

  // For a Pauli rotation U(t) = exp(-i t P / 2):
  // U(t + s) - U(t - s) = -2i sin(s/2) P U(t) = 4 sin(s/2) dU/dt,
  // so with s = pi/2 the shifted difference is 2 sqrt(2) |d_mu psi>.
  const double scale = 1.0 / (2.0 * std::numbers::sqrt2);
  std::vector<std::vector<cplx>> deriv(block_size, std::vector<cplx>(dim));
  for_each_shifted_state(
      circuit, theta, features, initial, 1, begin, end, workers,
      [&](int slot, int sign, std::span<const cplx> amps) {
        const int row = slot_index[slot];
        if (row < 0) {
          return;
        }
        auto &d = deriv[row];
        for (std::size_t i = 0; i < dim; ++i) {
          d[i] += (sign > 0 ? scale : -scale) * amps[i];
        }
      });

  const auto &kernels = simd::active_kernels();
  std::vector<cplx> overlap(block_size);
  for (std::size_t mu = 0; mu < block_size; ++mu) {
    overlap[mu] = kernels.inner_product(deriv[mu].data(), psi.data(), dim);
  }
  Matrix block(block_size, block_size);
  for (std::size_t mu = 0; mu < block_size; ++mu) {
    for (std::size_t nu = mu; nu < block_size; ++nu) {
      const cplx metric =
          kernels.inner_product(deriv[mu].data(), deriv[nu].data(), dim) -
          overlap[mu] * std::conj(overlap[nu]);
      const double value = 4.0 * metric.real();
      block(mu, nu) = value;
      block(nu, mu) = value;
    }
  }
  return block;
}

} // namespace

double Gradient::squared_norm() const {
  double s = 0.0;
  for (double v : values) {
    s += v * v;
  }
  return s;
}

std::string_view to_string(QfimFidelity fidelity) {
  switch (fidelity) {
  case QfimFidelity::Exact: return "exact";
  case QfimFidelity::BlockDiagonal: return "block-diagonal";
  case QfimFidelity::Empirical: return "empirical";
  }
  return "?";
}

void for_each_shifted_state(const Circuit &circuit,
                            std::span<const double> theta,
                            std::span<const double> features,
                            std::span<const cplx> initial, std::size_t batch,
                            std::size_t gate_begin, std::size_t gate_end,
                            int workers, const ShiftVisitor &visitor) {
  check_theta(circuit, theta);
  const auto &gates = circuit.gates();
  gate_end = std::min(gate_end, gates.size());
  std::vector<std::size_t> param_gates;
  for (std::size_t g = gate_begin; g < gate_end; ++g) {
    if (gates[g].is_parameterized()) {
      switch (gates[g].kind) {
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RZ:
      case GateKind::Rot: break;
      default:
        throw Error(std::string(to_string(gates[g].kind)) +
                    " is not shiftable");
      }
      param_gates.push_back(g);
    }
  }
  const std::size_t chunks = std::min<std::size_t>(
      param_gates.size(), static_cast<std::size_t>(std::max(workers, 1)));
  parallel_for(chunks, static_cast<int>(chunks), [&](std::size_t c) {
    const std::size_t lo = param_gates.size() * c / chunks;
    const std::size_t hi = param_gates.size() * (c + 1) / chunks;
    std::vector<cplx> prefix(initial.begin(), initial.end());
    std::vector<cplx> work(prefix.size());
    std::vector<double> shifted(theta.begin(), theta.end());
    std::size_t position = gate_begin;
    for (std::size_t k = lo; k < hi; ++k) {
      const std::size_t g = param_gates[k];
      apply_gates(prefix, batch, circuit, position, g, theta, features);
      position = g;
      for (int slot : gates[g].param_slots) {
        for (int sign : {+1, -1}) {
          std::copy(prefix.begin(), prefix.end(), work.begin());
          shifted[slot] = theta[slot] + sign * kShift;
          apply_gates(work, batch, circuit, g, gate_end, shifted, features);
          shifted[slot] = theta[slot];
          visitor(slot, sign, work);
        }
      }
    }
  });
}

ObservableObjective::ObservableObjective(Circuit circuit, Observable observable)
    : circuit_(std::move(circuit)), observable_(std::move(observable)) {
  if (circuit_.num_qubits() != observable_.num_qubits()) {
    throw Error("observable and circuit act on different qubit counts");
  }
}

double ObservableObjective::value(std::span<const double> theta) const {
  return expectation(apply_circuit(circuit_, theta), observable_);
}

Gradient ObservableObjective::gradient(std::span<const double> theta,
                                       int workers) const {
  return hypinit::gradient(circuit_, theta, observable_, {}, workers);
}

Gradient gradient(const Circuit &circuit, std::span<const double> theta,
                  const Observable &obs, std::span<const double> features,
                  int workers) {
  check_theta(circuit, theta);
  if (obs.num_qubits() != circuit.num_qubits()) {
    throw Error("observable and circuit act on different qubit counts");
  }
  if (features.size() != circuit.num_features()) {
    throw Error("feature count does not match the circuit's embedding slots");
  }
  const StateVector zero(circuit.num_qubits());
  std::vector<double> plus(circuit.num_params());
  std::vector<double> minus(circuit.num_params());
  for_each_shifted_state(circuit, theta, features, zero.amplitudes(), 1, 0,
                         circuit.gates().size(), workers,
                         [&](int slot, int sign, std::span<const cplx> amps) {
                           (sign > 0 ? plus : minus)[slot] =
                               expectation(amps, obs);
                         });
  Gradient g{std::vector<double>(circuit.num_params())};
  for (std::size_t mu = 0; mu < g.values.size(); ++mu) {
    g.values[mu] = 0.5 * (plus[mu] - minus[mu]);
  }
  check_finite(g);
  return g;
}

QfimMatrix qfim_exact(const Circuit &circuit, std::span<const double> theta,
                      std::span<const double> features, int workers) {
  check_theta(circuit, theta);
  const std::size_t p = circuit.num_params();
  if (p > kExactQfimMaxParams) {
    throw Error("exact QFIM limited to " + std::to_string(kExactQfimMaxParams) +
                " parameters (circuit has " + std::to_string(p) +
                "); use the block-diagonal or empirical fidelity");
  }
  std::vector<int> index(p);
  for (std::size_t s = 0; s < p; ++s) {
    index[s] = static_cast<int>(s);
  }
  const StateVector zero(circuit.num_qubits());
  return {qfim_block(circuit, theta, features, zero.amplitudes(), 0,
                     circuit.gates().size(), index, p, workers),
          QfimFidelity::Exact};
}

QfimMatrix qfim_block_diagonal(const Circuit &circuit,
                               std::span<const double> theta,
                               std::span<const double> features, int workers) {
  check_theta(circuit, theta);
  const auto &gates = circuit.gates();
  for (const Gate &gate : gates) {
    if (gate.is_parameterized() && gate.layer < 0) {
      throw Error("block-diagonal QFIM needs every parameterized gate to "
                  "carry a layer tag");
    }
  }
  if (circuit.num_layers() == 0) {
    throw Error("block-diagonal QFIM needs a layered circuit");
  }
  const std::size_t p = circuit.num_params();
  QfimMatrix out{Matrix(p, p), QfimFidelity::BlockDiagonal};
  StateVector entering(circuit.num_qubits());
  std::size_t position = 0;
  const auto slots = circuit.layer_slots();
  for (int layer = 0; layer < circuit.num_layers(); ++layer) {
    std::size_t first = gates.size();
    std::size_t last = 0;
    for (std::size_t g = 0; g < gates.size(); ++g) {
      if (gates[g].layer == layer) {
        first = std::min(first, g);
        last = std::max(last, g);
      }
    }
    if (first == gates.size() || slots[layer].empty()) {
      continue;
    }
    apply_gates(entering.amplitudes(), 1, circuit, position, first, theta,
                features);
    position = first;
    std::vector<int> index(p, -1);
    for (std::size_t k = 0; k < slots[layer].size(); ++k) {
      index[slots[layer][k]] = static_cast<int>(k);
    }
    const Matrix block =
        qfim_block(circuit, theta, features, entering.amplitudes(), first,
                   last + 1, index, slots[layer].size(), workers);
    for (std::size_t a = 0; a < slots[layer].size(); ++a) {
      for (std::size_t b = 0; b < slots[layer].size(); ++b) {
        out.entries(slots[layer][a], slots[layer][b]) = block(a, b);
      }
    }
  }
  return out;
}

QfimMatrix qfim_empirical(const Gradient &gradient) {
  const std::size_t p = gradient.size();
  QfimMatrix out{Matrix(p, p), QfimFidelity::Empirical};
  for (std::size_t mu = 0; mu < p; ++mu) {
    for (std::size_t nu = 0; nu < p; ++nu) {
      out.entries(mu, nu) = gradient.values[mu] * gradient.values[nu];
    }
  }
  return out;
}

QfimMatrix qfim_auto(const Circuit &circuit, std::span<const double> theta,
                     const Objective *objective, int workers) {
  if (circuit.num_params() <= kExactQfimMaxParams) {
    return qfim_exact(circuit, theta, {}, workers);
  }
  bool layered = circuit.num_layers() > 0;
  for (const Gate &gate : circuit.gates()) {
    layered = layered && (!gate.is_parameterized() || gate.layer >= 0);
  }
  if (layered) {
    return qfim_block_diagonal(circuit, theta, {}, workers);
  }
  if (objective == nullptr) {
    throw Error("empirical QFIM fallback needs a task objective");
  }
  return qfim_empirical(objective->gradient(theta, workers));
}

QfimMatrix stabilize(const QfimMatrix &qfim, double eps) {
  if (!(eps > 0.0)) {
    throw Error("stabilizer eps must be positive");
  }
  QfimMatrix out = qfim;
  for (std::size_t i = 0; i < out.entries.rows(); ++i) {
    out.entries(i, i) += eps;
  }
  return out;
}

} // namespace hypinit
