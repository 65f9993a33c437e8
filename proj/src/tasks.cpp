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
#include "hypinit/tasks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hypinit/parallel.hpp"

namespace hypinit {
namespace {

constexpr double kProbFloor = 1e-10;

// Class probabilities from a final state: marginals of the leading readout
// qubits, truncated to C and renormalized. Also returns the normalizer.
struct Readout {
  std::vector<double> marginals; // first C entries
  std::vector<double> probs;
  double total = 0.0;
};

Readout readout(std::span<const cplx> amps, int num_qubits, int num_classes,
                std::vector<double> &scratch) {
  const int m = readout_qubits(num_classes);
  scratch.resize(amps.size());
  simd::active_kernels().squared_magnitudes(amps.data(), scratch.data(),
                                            amps.size());
  const std::size_t block = amps.size() >> m;
  Readout r;
  r.marginals.assign(num_classes, 0.0);
  for (int c = 0; c < num_classes; ++c) {
    double s = 0.0;
    for (std::size_t i = c * block; i < (c + 1) * block; ++i) {
      s += scratch[i];
    }
    r.marginals[c] = s;
    r.total += s;
  }
  r.probs.resize(num_classes);
  for (int c = 0; c < num_classes; ++c) {
    r.probs[c] = r.total > 0.0 ? r.marginals[c] / r.total
                               : 1.0 / static_cast<double>(num_classes);
  }
  (void)num_qubits;
  return r;
}

double cross_entropy(const std::vector<double> &probs, int label) {
  const double p = std::clamp(probs[label], kProbFloor, 1.0 - kProbFloor);
  return -std::log(p);
}

void check_features(const QmlTask &task, std::span<const double> features) {
  if (features.size() != task.circuit.num_features()) {
    throw Error("sample has " + std::to_string(features.size()) +
                " features, task expects " +
                std::to_string(task.circuit.num_features()));
  }
}

std::vector<cplx> embedded_state(const QmlTask &task,
                                 std::span<const double> features) {
  check_features(task, features);
  Circuit embedding(task.circuit.num_qubits());
  for (std::size_t j = 0; j < features.size(); ++j) {
    embedding.add_embedding(static_cast<int>(j), static_cast<int>(j));
  }
  StateVector state = apply_circuit(embedding, {}, features);
  return {state.amplitudes().begin(), state.amplitudes().end()};
}

} // namespace

// ---------------------------------------------------------------------------
// Adam

AdamState::AdamState(std::size_t num_params, double lr_)
    : m(num_params, 0.0), v(num_params, 0.0), lr(lr_) {}

std::vector<double> adam_step(AdamState &state, std::span<const double> theta,
                              const Gradient &grad) {
  if (theta.size() != state.m.size() || grad.size() != state.m.size()) {
    throw Error("Adam state, theta and gradient sizes differ");
  }
  ++state.step;
  const double correction1 = 1.0 - std::pow(state.beta1, state.step);
  const double correction2 = 1.0 - std::pow(state.beta2, state.step);
  std::vector<double> out(theta.begin(), theta.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double g = grad.values[i];
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
    const double m_hat = state.m[i] / correction1;
    const double v_hat = state.v[i] / correction2;
    out[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
  }
  return out;
}

TrainResult train(const Objective &objective, std::span<const double> theta0,
                  int iters, double lr, int workers) {
  if (theta0.size() != objective.num_params()) {
    throw Error("initial parameters do not match the objective");
  }
  if (iters < 0) {
    throw Error("iteration count must be >= 0");
  }
  TrainResult result{{theta0.begin(), theta0.end()}, {}};
  result.curve.reserve(iters + 1);
  result.curve.push_back(objective.value(result.theta));
  AdamState adam(theta0.size(), lr);
  for (int it = 0; it < iters; ++it) {
    const Gradient g = objective.gradient(result.theta, workers);
    result.theta = adam_step(adam, result.theta, g);
    result.curve.push_back(objective.value(result.theta));
  }
  return result;
}

// ---------------------------------------------------------------------------
// VQE

double exact_ground_energy(const Observable &hamiltonian) {
  const int q = hamiltonian.num_qubits();
  if (q > 10) {
    throw Error("dense diagonalization limited to 10 qubits");
  }
  const std::size_t dim = std::size_t{1} << q;
  std::vector<cplx> h(dim * dim);
  static constexpr cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto &term : hamiltonian.compiled()) {
    const cplx phase = term.coefficient * kPhase[term.y_count % 4];
    for (std::size_t i = 0; i < dim; ++i) {
      const double sign = (std::popcount(i & term.z_mask) & 1U) ? -1.0 : 1.0;
      h[(i ^ term.x_mask) * dim + i] += sign * phase;
    }
  }
  // H = A + iB  ->  [[A, -B], [B, A]]
  Matrix embedding(2 * dim, 2 * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const cplx v = h[r * dim + c];
      embedding(r, c) = v.real();
      embedding(r + dim, c + dim) = v.real();
      embedding(r, c + dim) = -v.imag();
      embedding(r + dim, c) = v.imag();
    }
  }
  return hermitian_eigenvalues(embedding).back();
}

VqeTask make_vqe_task(Observable hamiltonian, int layers) {
  const int q = hamiltonian.num_qubits();
  const double e0 = exact_ground_energy(hamiltonian);
  Circuit circuit = build_strongly_entangling(layers, q);
  return VqeTask{std::move(hamiltonian), std::move(circuit), e0};
}

double vqe_cost(const VqeTask &task, std::span<const double> theta) {
  if (task.hamiltonian.num_qubits() != task.circuit.num_qubits()) {
    throw Error("Hamiltonian and ansatz qubit counts differ");
  }
  return expectation(apply_circuit(task.circuit, theta), task.hamiltonian);
}

// ---------------------------------------------------------------------------
// QML

int readout_qubits(int num_classes) {
  if (num_classes < 2) {
    throw Error("classification needs at least two classes");
  }
  return std::bit_width(static_cast<unsigned>(num_classes - 1));
}

QmlTask make_qml_task(Matrix train_features, std::vector<int> train_labels,
                      Matrix test_features, std::vector<int> test_labels,
                      int num_classes, int layers) {
  const int m = readout_qubits(num_classes);
  const std::size_t d = train_features.cols();
  if (train_features.rows() != train_labels.size() ||
      test_features.rows() != test_labels.size()) {
    throw Error("feature and label row counts differ");
  }
  if (test_features.rows() > 0 && test_features.cols() != d) {
    throw Error("train and test feature widths differ");
  }
  const int qubits = std::max<int>({static_cast<int>(d), m, 2});
  for (const auto *labels : {&train_labels, &test_labels}) {
    for (int y : *labels) {
      if (y < 0 || y >= num_classes) {
        throw Error("label " + std::to_string(y) + " outside [0, " +
                    std::to_string(num_classes) + ")");
      }
    }
  }
  Circuit ansatz = build_strongly_entangling(layers, qubits);
  Circuit circuit = embed_angles(ansatz, d);
  return QmlTask{std::move(train_features), std::move(train_labels),
                 std::move(test_features),  std::move(test_labels),
                 num_classes,               std::move(ansatz),
                 std::move(circuit)};
}

std::vector<double> qml_probabilities(const QmlTask &task,
                                      std::span<const double> theta,
                                      std::span<const double> features) {
  check_features(task, features);
  const StateVector state = apply_circuit(task.circuit, theta, features);
  std::vector<double> scratch;
  return readout(state.amplitudes(), state.num_qubits(), task.num_classes,
                 scratch)
      .probs;
}

std::vector<double> qml_logits(const QmlTask &task,
                               std::span<const double> theta,
                               std::span<const double> features) {
  check_features(task, features);
  if (task.num_classes == 2) {
    const StateVector state = apply_circuit(task.circuit, theta, features);
    return {expectation(state,
                        Observable::z_product(state.num_qubits(), {0}))};
  }
  return qml_probabilities(task, theta, features);
}

double qml_loss(const QmlTask &task, std::span<const double> theta) {
  return QmlObjective(task).value(theta);
}

double qml_accuracy(const QmlTask &task, std::span<const double> theta) {
  const std::size_t n = task.test_features.rows();
  if (n == 0) {
    throw Error("empty test set");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto probs = qml_probabilities(task, theta, task.test_features.row(i));
    const auto best = std::max_element(probs.begin(), probs.end());
    if (best - probs.begin() == task.test_labels[i]) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

QmlObjective::QmlObjective(const QmlTask &task)
    : QmlObjective(task, [&] {
        std::vector<std::size_t> rows(task.train_features.rows());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          rows[i] = i;
        }
        return rows;
      }()) {}

QmlObjective::QmlObjective(const QmlTask &task, std::vector<std::size_t> rows)
    : task_(task), rows_(std::move(rows)) {
  if (rows_.empty()) {
    throw Error("QML objective needs a non-empty batch");
  }
  inputs_.reserve(rows_.size());
  for (std::size_t r : rows_) {
    if (r >= task_.train_features.rows()) {
      throw Error("training row index out of range");
    }
    inputs_.push_back(embedded_state(task_, task_.train_features.row(r)));
  }
}

double QmlObjective::value(std::span<const double> theta) const {
  const auto unitary = circuit_unitary(task_.ansatz, theta);
  const std::size_t dim = inputs_.front().size();
  std::vector<cplx> out(dim);
  std::vector<double> scratch;
  double total = 0.0;
  for (std::size_t n = 0; n < rows_.size(); ++n) {
    simd::active_kernels().matvec(unitary.data(), inputs_[n].data(),
                                  out.data(), dim, dim);
    const Readout r = readout(out, task_.ansatz.num_qubits(),
                              task_.num_classes, scratch);
    total += cross_entropy(r.probs, task_.train_labels[rows_[n]]);
  }
  return total / static_cast<double>(rows_.size());
}

Gradient QmlObjective::gradient(std::span<const double> theta,
                                int workers) const {
  if (theta.size() != num_params()) {
    throw Error("theta length does not match the QML ansatz");
  }
  const std::size_t dim = inputs_.front().size();
  const int classes = task_.num_classes;
  const double inv_n = 1.0 / static_cast<double>(rows_.size());

  // dL/dm_c per sample at theta; the shifted marginals are contracted with it.
  std::vector<std::vector<double>> weight(rows_.size(),
                                          std::vector<double>(classes, 0.0));
  {
    const auto unitary = circuit_unitary(task_.ansatz, theta);
    std::vector<cplx> out(dim);
    std::vector<double> scratch;
    for (std::size_t n = 0; n < rows_.size(); ++n) {
      simd::active_kernels().matvec(unitary.data(), inputs_[n].data(),
                                    out.data(), dim, dim);
      const Readout r =
          readout(out, task_.ansatz.num_qubits(), classes, scratch);
      const int y = task_.train_labels[rows_[n]];
      const double py = r.probs[y];
      if (r.total <= 0.0 || py <= kProbFloor || py >= 1.0 - kProbFloor) {
        continue;
      }
      for (int c = 0; c < classes; ++c) {
        const double dp = ((c == y ? 1.0 : 0.0) - py) / r.total;
        weight[n][c] = -dp / py * inv_n;
      }
    }
  }

  std::vector<cplx> identity(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    identity[i * dim + i] = 1.0;
  }
  Gradient g{std::vector<double>(num_params(), 0.0)};
  for_each_shifted_state(
      task_.ansatz, theta, {}, identity, dim, 0, task_.ansatz.gates().size(),
      workers, [&](int slot, int sign, std::span<const cplx> unitary) {
        std::vector<cplx> out(dim);
        std::vector<double> scratch;
        double acc = 0.0;
        for (std::size_t n = 0; n < rows_.size(); ++n) {
          simd::active_kernels().matvec(unitary.data(), inputs_[n].data(),
                                        out.data(), dim, dim);
          const Readout r =
              readout(out, task_.ansatz.num_qubits(), classes, scratch);
          for (int c = 0; c < classes; ++c) {
            acc += weight[n][c] * r.marginals[c];
          }
        }
        g.values[slot] += 0.5 * sign * acc;
      });
  for (double v : g.values) {
    if (!std::isfinite(v)) {
      throw Error("QML gradient has a non-finite entry");
    }
  }
  return g;
}

} // namespace hypinit
