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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypinit/common.hpp"
#include "hypinit/simd/kernels.hpp"

namespace hypinit {

// Qubit 0 is the most significant bit of an amplitude index.

enum class GateKind { RX, RY, RZ, Rot, CNOT, CZ, RYFixed };

std::string_view to_string(GateKind kind);

/// Number of entries of theta a gate of this kind consumes.
int param_count(GateKind kind);

struct Gate {
  GateKind kind = GateKind::RY;
  int target = 0;
  std::optional<int> control;
  /// Indices into theta. Rot uses three consecutive slots (phi, theta, omega).
  std::vector<int> param_slots;
  /// Embedding gates take their angle from features[feature] instead.
  int feature = -1;
  /// Ansatz layer; -1 for gates outside any layer (embedding, fixed prefix).
  int layer = -1;

  bool is_parameterized() const { return !param_slots.empty(); }
  bool operator==(const Gate &) const = default;
};

class Circuit {
public:
  explicit Circuit(int num_qubits);

  /// Validating constructor for hand-assembled gate lists.
  static Circuit from_gates(int num_qubits, std::vector<Gate> gates);

  /// Appends a trainable gate, assigning the next free parameter slots.
  /// Returns the first slot.
  int add_rotation(GateKind kind, int target, int layer = -1);
  void add_fixed(GateKind kind, int target, std::optional<int> control = {},
                 int layer = -1);
  void add_embedding(int target, int feature);

  int num_qubits() const { return num_qubits_; }
  std::size_t num_params() const { return num_params_; }
  std::size_t num_features() const { return num_features_; }
  /// One past the highest layer tag (0 for untagged circuits).
  int num_layers() const { return num_layers_; }
  const std::vector<Gate> &gates() const { return gates_; }

  /// Parameter slots owned by each layer, in gate order.
  std::vector<std::vector<int>> layer_slots() const;

  /// The same circuit with every embedding gate removed.
  Circuit without_embedding() const;

  bool operator==(const Circuit &) const = default;

private:
  void push(Gate gate);

  int num_qubits_;
  std::size_t num_params_ = 0;
  std::size_t num_features_ = 0;
  int num_layers_ = 0;
  std::vector<Gate> gates_;
};

class StateVector {
public:
  /// |0...0>
  explicit StateVector(int num_qubits);
  /// Takes ownership of amplitudes; length must be 2^num_qubits and the norm
  /// 1 within 1e-10.
  StateVector(int num_qubits, std::vector<cplx> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

private:
  int num_qubits_;
  std::vector<cplx> amps_;
};

struct PauliTerm {
  double coefficient = 0.0;
  std::string word; ///< one of I, X, Y, Z per qubit; word[0] acts on qubit 0
};

/// Real linear combination of Pauli words.
class Observable {
public:
  Observable(int num_qubits, std::vector<PauliTerm> terms);

  /// Product of Z on the given qubits, coefficient 1.
  static Observable z_product(int num_qubits, std::vector<int> qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm> &terms() const { return terms_; }

  struct CompiledTerm {
    double coefficient;
    std::uint64_t x_mask;
    std::uint64_t z_mask;
    int y_count;
  };
  const std::vector<CompiledTerm> &compiled() const { return compiled_; }

private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
  std::vector<CompiledTerm> compiled_;
};

// Low-level application over a register of `batch` interleaved states:
// amplitude (basis index b, column c) lives at amps[b * batch + c], so the
// same gate sequence is applied to every column at once.

simd::Matrix2 gate_matrix(const Gate &gate, std::span<const double> theta,
                          std::span<const double> features);

void apply_gate(std::span<cplx> amps, int num_qubits, std::size_t batch,
                const Gate &gate, std::span<const double> theta,
                std::span<const double> features);

/// Applies gates [begin, end) of `circuit`.
void apply_gates(std::span<cplx> amps, std::size_t batch,
                 const Circuit &circuit, std::size_t begin, std::size_t end,
                 std::span<const double> theta,
                 std::span<const double> features);

/// Runs the circuit on |0...0>. `features` must be given exactly when the
/// circuit has embedding slots.
StateVector apply_circuit(const Circuit &circuit,
                          std::span<const double> theta,
                          std::span<const double> features = {});

/// Row-major 2^q x 2^q unitary of a circuit without embedding gates.
std::vector<cplx> circuit_unitary(const Circuit &circuit,
                                  std::span<const double> theta);

/// <psi|O|psi> for a single state. Throws if the imaginary residue exceeds
/// 1e-10 (scaled by the coefficient mass) or the qubit counts differ.
double expectation(const StateVector &state, const Observable &obs);
double expectation(std::span<const cplx> amps, const Observable &obs);

/// Per-layer: one Rot on every qubit, then CNOTs i -> (i + r) mod q with
/// r = 1 + (layer mod (q - 1)). On two qubits the ring is the single CNOT
/// 0 -> 1. p = layers * q * 3.
Circuit build_strongly_entangling(int layers, int qubits);

/// Fixed RY(pi/4) on every qubit, then per layer one rotation per qubit with
/// a seeded random axis in {X, Y, Z} followed by a CZ ladder (i, i + 1).
Circuit build_two_design(int layers, int qubits, std::uint64_t seed);

/// Per layer: RY then RZ on every qubit, then a CNOT chain i -> i + 1.
Circuit build_hea(int layers, int qubits);

/// Prepends RY(features[j]) on qubit j for j < num_features.
Circuit embed_angles(const Circuit &circuit, std::size_t num_features);

} // namespace hypinit
