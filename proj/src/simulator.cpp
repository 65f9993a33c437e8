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
#include "hypinit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypinit/random.hpp"

namespace hypinit {
namespace {

constexpr double kNormTolerance = 1e-10;

void check_qubit(int q, int num_qubits) {
  if (q < 0 || q >= num_qubits) {
    throw Error("qubit index " + std::to_string(q) + " outside [0, " +
                std::to_string(num_qubits) + ")");
  }
}

bool is_single_qubit(GateKind kind) {
  return kind != GateKind::CNOT && kind != GateKind::CZ;
}

simd::Matrix2 matmul(const simd::Matrix2 &a, const simd::Matrix2 &b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

simd::Matrix2 rx(double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  return {cplx{c, 0}, cplx{0, -s}, cplx{0, -s}, cplx{c, 0}};
}

simd::Matrix2 ry(double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
}

simd::Matrix2 rz(double angle) {
  const cplx phase = std::polar(1.0, angle / 2);
  return {std::conj(phase), cplx{0, 0}, cplx{0, 0}, phase};
}

std::size_t stride_of(int qubit, int num_qubits, std::size_t batch) {
  return batch << (num_qubits - 1 - qubit);
}

} // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
  case GateKind::RX: return "RX";
  case GateKind::RY: return "RY";
  case GateKind::RZ: return "RZ";
  case GateKind::Rot: return "Rot";
  case GateKind::CNOT: return "CNOT";
  case GateKind::CZ: return "CZ";
  case GateKind::RYFixed: return "RYFixed";
  }
  return "?";
}

int param_count(GateKind kind) {
  switch (kind) {
  case GateKind::RX:
  case GateKind::RY:
  case GateKind::RZ: return 1;
  case GateKind::Rot: return 3;
  default: return 0;
  }
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw Error("circuit needs 1..30 qubits, got " +
                std::to_string(num_qubits));
  }
}

Circuit Circuit::from_gates(int num_qubits, std::vector<Gate> gates) {
  Circuit circuit(num_qubits);
  std::vector<int> slot_uses;
  std::size_t max_feature = 0;
  for (Gate &gate : gates) {
    for (int slot : gate.param_slots) {
      if (slot < 0) {
        throw Error("negative parameter slot");
      }
      if (static_cast<std::size_t>(slot) >= slot_uses.size()) {
        slot_uses.resize(slot + 1, 0);
      }
      ++slot_uses[slot];
    }
    if (gate.feature >= 0) {
      max_feature = std::max<std::size_t>(max_feature, gate.feature + 1);
    }
    circuit.push(std::move(gate));
  }
  for (std::size_t s = 0; s < slot_uses.size(); ++s) {
    if (slot_uses[s] != 1) {
      throw Error("parameter slot " + std::to_string(s) + " referenced " +
                  std::to_string(slot_uses[s]) + " times (expected 1)");
    }
  }
  circuit.num_params_ = slot_uses.size();
  circuit.num_features_ = max_feature;
  return circuit;
}

void Circuit::push(Gate gate) {
  check_qubit(gate.target, num_qubits_);
  const bool two_qubit = !is_single_qubit(gate.kind);
  if (two_qubit != gate.control.has_value()) {
    throw Error(std::string(to_string(gate.kind)) +
                (two_qubit ? " needs a control qubit" : " takes no control"));
  }
  if (gate.control) {
    check_qubit(*gate.control, num_qubits_);
    if (*gate.control == gate.target) {
      throw Error("control and target coincide on qubit " +
                  std::to_string(gate.target));
    }
  }
  if (gate.feature >= 0) {
    if (gate.kind != GateKind::RY || !gate.param_slots.empty()) {
      throw Error("embedding gates must be slot-free RY gates");
    }
  } else if (static_cast<int>(gate.param_slots.size()) !=
             param_count(gate.kind)) {
    throw Error(std::string(to_string(gate.kind)) + " consumes " +
                std::to_string(param_count(gate.kind)) +
                " parameter slots, got " +
                std::to_string(gate.param_slots.size()));
  }
  if (gate.kind == GateKind::Rot) {
    const auto &s = gate.param_slots;
    if (s[1] != s[0] + 1 || s[2] != s[0] + 2) {
      throw Error("Rot slots must be consecutive");
    }
  }
  num_layers_ = std::max(num_layers_, gate.layer + 1);
  gates_.push_back(std::move(gate));
}

int Circuit::add_rotation(GateKind kind, int target, int layer) {
  const int count = param_count(kind);
  if (count == 0) {
    throw Error(std::string(to_string(kind)) + " is not a trainable rotation");
  }
  Gate gate;
  gate.kind = kind;
  gate.target = target;
  gate.layer = layer;
  const int first = static_cast<int>(num_params_);
  for (int k = 0; k < count; ++k) {
    gate.param_slots.push_back(first + k);
  }
  push(std::move(gate));
  num_params_ += count;
  return first;
}

void Circuit::add_fixed(GateKind kind, int target, std::optional<int> control,
                        int layer) {
  if (param_count(kind) != 0) {
    throw Error(std::string(to_string(kind)) + " is parameterized");
  }
  Gate gate;
  gate.kind = kind;
  gate.target = target;
  gate.control = control;
  gate.layer = layer;
  push(std::move(gate));
}

void Circuit::add_embedding(int target, int feature) {
  Gate gate;
  gate.target = target;
  gate.feature = feature;
  push(std::move(gate));
  num_features_ = std::max<std::size_t>(num_features_, feature + 1);
}

std::vector<std::vector<int>> Circuit::layer_slots() const {
  std::vector<std::vector<int>> slots(num_layers_);
  for (const Gate &gate : gates_) {
    if (gate.layer >= 0) {
      slots[gate.layer].insert(slots[gate.layer].end(),
                               gate.param_slots.begin(),
                               gate.param_slots.end());
    }
  }
  return slots;
}

Circuit Circuit::without_embedding() const {
  Circuit out(num_qubits_);
  for (const Gate &gate : gates_) {
    if (gate.feature < 0) {
      out.push(gate);
    }
  }
  out.num_params_ = num_params_;
  return out;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw Error("state needs 1..30 qubits");
  }
  amps_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits < 1 || num_qubits > 30 ||
      amps_.size() != (std::size_t{1} << num_qubits)) {
    throw Error("amplitude vector length must be 2^num_qubits");
  }
  if (std::abs(norm() - 1.0) > kNormTolerance) {
    throw Error("state is not normalized");
  }
}

double StateVector::norm() const {
  return std::sqrt(simd::active_kernels()
                       .inner_product(amps_.data(), amps_.data(), amps_.size())
                       .real());
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(int num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw Error("observable needs 1..30 qubits");
  }
  for (const PauliTerm &term : terms_) {
    if (static_cast<int>(term.word.size()) != num_qubits) {
      throw Error("Pauli word '" + term.word + "' has length " +
                  std::to_string(term.word.size()) + ", expected " +
                  std::to_string(num_qubits));
    }
    if (!std::isfinite(term.coefficient)) {
      throw Error("non-finite Pauli coefficient");
    }
    CompiledTerm compiled{term.coefficient, 0, 0, 0};
    for (int q = 0; q < num_qubits; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (num_qubits - 1 - q);
      switch (term.word[q]) {
      case 'I': break;
      case 'X': compiled.x_mask |= bit; break;
      case 'Y':
        compiled.x_mask |= bit;
        compiled.z_mask |= bit;
        ++compiled.y_count;
        break;
      case 'Z': compiled.z_mask |= bit; break;
      default:
        throw Error("illegal Pauli character '" + std::string(1, term.word[q]) +
                    "' in '" + term.word + "'");
      }
    }
    compiled_.push_back(compiled);
  }
}

Observable Observable::z_product(int num_qubits, std::vector<int> qubits) {
  std::string word(num_qubits, 'I');
  for (int q : qubits) {
    check_qubit(q, num_qubits);
    word[q] = 'Z';
  }
  return Observable(num_qubits, {PauliTerm{1.0, word}});
}

// ---------------------------------------------------------------------------
// Application

simd::Matrix2 gate_matrix(const Gate &gate, std::span<const double> theta,
                          std::span<const double> features) {
  auto angle = [&](int k) {
    if (gate.feature >= 0) {
      return features[gate.feature];
    }
    return theta[gate.param_slots[k]];
  };
  switch (gate.kind) {
  case GateKind::RX: return rx(angle(0));
  case GateKind::RY: return ry(angle(0));
  case GateKind::RZ: return rz(angle(0));
  case GateKind::Rot:
    // Rot(phi, theta, omega) = RZ(omega) RY(theta) RZ(phi)
    return matmul(rz(angle(2)), matmul(ry(angle(1)), rz(angle(0))));
  case GateKind::RYFixed: return ry(std::numbers::pi / 4);
  default: break;
  }
  throw Error(std::string(to_string(gate.kind)) + " has no 2x2 matrix");
}

void apply_gate(std::span<cplx> amps, int num_qubits, std::size_t batch,
                const Gate &gate, std::span<const double> theta,
                std::span<const double> features) {
  if (is_single_qubit(gate.kind)) {
    simd::active_kernels().apply_matrix2(
        amps.data(), amps.size(), stride_of(gate.target, num_qubits, batch),
        gate_matrix(gate, theta, features));
    return;
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::size_t cbit = std::size_t{1} << (num_qubits - 1 - *gate.control);
  const std::size_t tbit = std::size_t{1} << (num_qubits - 1 - gate.target);
  cplx *data = amps.data();
  if (gate.kind == GateKind::CNOT) {
    for (std::size_t b = 0; b < dim; ++b) {
      if ((b & cbit) && !(b & tbit)) {
        std::swap_ranges(data + b * batch, data + (b + 1) * batch,
                         data + (b | tbit) * batch);
      }
    }
  } else {
    for (std::size_t b = 0; b < dim; ++b) {
      if ((b & cbit) && (b & tbit)) {
        std::transform(data + b * batch, data + (b + 1) * batch,
                       data + b * batch, [](cplx a) { return -a; });
      }
    }
  }
}

void apply_gates(std::span<cplx> amps, std::size_t batch,
                 const Circuit &circuit, std::size_t begin, std::size_t end,
                 std::span<const double> theta,
                 std::span<const double> features) {
  const auto &gates = circuit.gates();
  for (std::size_t g = begin; g < end; ++g) {
    apply_gate(amps, circuit.num_qubits(), batch, gates[g], theta, features);
  }
}

StateVector apply_circuit(const Circuit &circuit,
                          std::span<const double> theta,
                          std::span<const double> features) {
  if (theta.size() != circuit.num_params()) {
    throw Error("theta has " + std::to_string(theta.size()) +
                " entries, circuit expects " +
                std::to_string(circuit.num_params()));
  }
  if (features.size() != circuit.num_features()) {
    throw Error(circuit.num_features() == 0
                    ? "features given to a circuit without embedding slots"
                    : "circuit expects " +
                          std::to_string(circuit.num_features()) +
                          " features, got " + std::to_string(features.size()));
  }
  StateVector state(circuit.num_qubits());
  apply_gates(state.amplitudes(), 1, circuit, 0, circuit.gates().size(), theta,
              features);
  return state;
}

std::vector<cplx> circuit_unitary(const Circuit &circuit,
                                  std::span<const double> theta) {
  if (circuit.num_features() != 0) {
    throw Error("circuit_unitary needs a circuit without embedding slots");
  }
  if (theta.size() != circuit.num_params()) {
    throw Error("theta length does not match circuit");
  }
  const std::size_t dim = std::size_t{1} << circuit.num_qubits();
  std::vector<cplx> unitary(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    unitary[i * dim + i] = 1.0;
  }
  apply_gates(unitary, dim, circuit, 0, circuit.gates().size(), theta, {});
  return unitary;
}

double expectation(std::span<const cplx> amps, const Observable &obs) {
  if (amps.size() != (std::size_t{1} << obs.num_qubits())) {
    throw Error("observable acts on " + std::to_string(obs.num_qubits()) +
                " qubits but the state has " + std::to_string(amps.size()) +
                " amplitudes");
  }
  static constexpr cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto &kernels = simd::active_kernels();
  cplx total = 0.0;
  double mass = 0.0;
  for (const auto &term : obs.compiled()) {
    const cplx raw = kernels.pauli_expectation(amps.data(), amps.size(),
                                               term.x_mask, term.z_mask);
    total += term.coefficient * kPhase[term.y_count % 4] * raw;
    mass += std::abs(term.coefficient);
  }
  if (std::abs(total.imag()) > kNormTolerance * std::max(1.0, mass)) {
    throw Error("expectation has imaginary residue " +
                std::to_string(total.imag()));
  }
  return total.real();
}

double expectation(const StateVector &state, const Observable &obs) {
  if (state.num_qubits() != obs.num_qubits()) {
    throw Error("qubit count mismatch between state and observable");
  }
  return expectation(state.amplitudes(), obs);
}

// ---------------------------------------------------------------------------
// Ansatz builders

Circuit build_strongly_entangling(int layers, int qubits) {
  if (layers < 1) {
    throw Error("strongly entangling ansatz needs at least one layer");
  }
  if (qubits < 2) {
    throw Error("strongly entangling ansatz needs at least two qubits");
  }
  Circuit circuit(qubits);
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 0; q < qubits; ++q) {
      circuit.add_rotation(GateKind::Rot, q, layer);
    }
    const int range = 1 + layer % (qubits - 1);
    const int ring = qubits == 2 ? 1 : qubits;
    for (int q = 0; q < ring; ++q) {
      circuit.add_fixed(GateKind::CNOT, (q + range) % qubits, q, layer);
    }
  }
  return circuit;
}

Circuit build_two_design(int layers, int qubits, std::uint64_t seed) {
  if (layers < 1 || qubits < 2) {
    throw Error("two-design ansatz needs layers >= 1 and qubits >= 2");
  }
  static constexpr GateKind kAxes[3] = {GateKind::RX, GateKind::RY,
                                        GateKind::RZ};
  Prng rng = Prng(seed).derive({0x7432'6465'7369'676eULL});
  Circuit circuit(qubits);
  for (int q = 0; q < qubits; ++q) {
    circuit.add_fixed(GateKind::RYFixed, q);
  }
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 0; q < qubits; ++q) {
      circuit.add_rotation(kAxes[rng.below(3)], q, layer);
    }
    for (int q = 0; q + 1 < qubits; ++q) {
      circuit.add_fixed(GateKind::CZ, q + 1, q, layer);
    }
  }
  return circuit;
}

Circuit build_hea(int layers, int qubits) {
  if (layers < 1 || qubits < 2) {
    throw Error("hardware-efficient ansatz needs layers >= 1 and qubits >= 2");
  }
  Circuit circuit(qubits);
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 0; q < qubits; ++q) {
      circuit.add_rotation(GateKind::RY, q, layer);
      circuit.add_rotation(GateKind::RZ, q, layer);
    }
    for (int q = 0; q + 1 < qubits; ++q) {
      circuit.add_fixed(GateKind::CNOT, q + 1, q, layer);
    }
  }
  return circuit;
}

Circuit embed_angles(const Circuit &circuit, std::size_t num_features) {
  if (num_features > static_cast<std::size_t>(circuit.num_qubits())) {
    throw Error("cannot embed " + std::to_string(num_features) +
                " features into " + std::to_string(circuit.num_qubits()) +
                " qubits");
  }
  std::vector<Gate> gates;
  for (std::size_t j = 0; j < num_features; ++j) {
    Gate gate;
    gate.target = static_cast<int>(j);
    gate.feature = static_cast<int>(j);
    gates.push_back(std::move(gate));
  }
  gates.insert(gates.end(), circuit.gates().begin(), circuit.gates().end());
  return Circuit::from_gates(circuit.num_qubits(), std::move(gates));
}

} // namespace hypinit
