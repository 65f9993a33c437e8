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
#include <span>
#include <vector>

#include "hypinit/differentiation.hpp"
#include "hypinit/linalg.hpp"

namespace hypinit {

// ---------------------------------------------------------------------------
// Adam

struct AdamState {
  AdamState(std::size_t num_params, double lr = 0.01);

  std::vector<double> m;
  std::vector<double> v;
  long step = 0;
  double lr;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam descent step; returns the updated parameters.
std::vector<double> adam_step(AdamState &state, std::span<const double> theta,
                              const Gradient &grad);

struct TrainResult {
  std::vector<double> theta;
  std::vector<double> curve; ///< cost at theta_0 .. theta_iters
};

/// Parameter-shift gradient + Adam for `iters` steps.
TrainResult train(const Objective &objective, std::span<const double> theta0,
                  int iters, double lr = 0.01, int workers = 1);

// ---------------------------------------------------------------------------
// VQE

/// Minimum eigenvalue of the dense Hamiltonian (Jacobi on the 2 * 2^q real
/// symmetric embedding). q <= 10.
double exact_ground_energy(const Observable &hamiltonian);

struct VqeTask {
  Observable hamiltonian;
  Circuit circuit;
  double exact_ground_energy;
};

/// Strongly entangling ansatz sized to the Hamiltonian.
VqeTask make_vqe_task(Observable hamiltonian, int layers = 8);

double vqe_cost(const VqeTask &task, std::span<const double> theta);

// ---------------------------------------------------------------------------
// QML classification

struct QmlTask {
  Matrix train_features; ///< scaled angles, one row per sample
  std::vector<int> train_labels;
  Matrix test_features;
  std::vector<int> test_labels;
  int num_classes = 2;
  Circuit ansatz;  ///< trainable part, no embedding
  Circuit circuit; ///< angle embedding followed by the ansatz
};

QmlTask make_qml_task(Matrix train_features, std::vector<int> train_labels,
                      Matrix test_features, std::vector<int> test_labels,
                      int num_classes, int layers = 8);

/// Readout qubits for C classes: ceil(log2 C).
int readout_qubits(int num_classes);

/// Binary: {<Z_0>}. Multiclass: marginal basis probabilities of the first
/// ceil(log2 C) qubits truncated to C entries and renormalized.
std::vector<double> qml_logits(const QmlTask &task,
                               std::span<const double> theta,
                               std::span<const double> features);

/// Class probabilities; binary P(1) = (1 - <Z_0>) / 2.
std::vector<double> qml_probabilities(const QmlTask &task,
                                      std::span<const double> theta,
                                      std::span<const double> features);

/// Mean cross-entropy over the training set, probabilities clamped to
/// [1e-10, 1 - 1e-10].
double qml_loss(const QmlTask &task, std::span<const double> theta);

/// Fraction of test samples whose arg-max class matches the label.
double qml_accuracy(const QmlTask &task, std::span<const double> theta);

/// Training loss over a subset of training rows. Evaluates the ansatz once as
/// a dense unitary per (shifted) theta and applies it to every embedded
/// sample.
class QmlObjective final : public Objective {
public:
  /// All training rows.
  explicit QmlObjective(const QmlTask &task);
  QmlObjective(const QmlTask &task, std::vector<std::size_t> rows);

  std::size_t num_params() const override { return task_.ansatz.num_params(); }
  double value(std::span<const double> theta) const override;
  Gradient gradient(std::span<const double> theta,
                    int workers = 1) const override;

private:
  const QmlTask &task_;
  std::vector<std::size_t> rows_;
  std::vector<std::vector<cplx>> inputs_; ///< embedded states per row
};

} // namespace hypinit
