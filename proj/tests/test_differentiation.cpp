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
#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hypinit/differentiation.hpp"
#include "hypinit/linalg.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

namespace {

using hypinit::Circuit;
using hypinit::GateKind;
using hypinit::Matrix;
using hypinit::Observable;
constexpr double pi = std::numbers::pi;

Circuit ry_circuit(int qubits) {
  Circuit c(qubits);
  for (int q = 0; q < qubits; ++q) {
    c.add_rotation(GateKind::RY, q, 0);
  }
  return c;
}

double cost(const Circuit &c, std::span<const double> theta,
            const Observable &obs) {
  return hypinit::expectation(hypinit::apply_circuit(c, theta), obs);
}

TEST(Gradient, SingleRyAtHalfPi) {
  const auto g = hypinit::gradient(ry_circuit(1), std::vector{pi / 2},
                                   Observable::z_product(1, {0}));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_NEAR(g.values[0], -1.0, 1e-14);
}

TEST(Gradient, SingleRyAtZero) {
  const auto g = hypinit::gradient(ry_circuit(1), std::vector{0.0},
                                   Observable::z_product(1, {0}));
  EXPECT_NEAR(g.values[0], 0.0, 1e-15);
}

TEST(Gradient, ProductCircuitIgnoresSecondParameter) {
  const auto g = hypinit::gradient(ry_circuit(2), std::vector{pi / 2, 1.234},
                                   Observable::z_product(2, {0}));
  EXPECT_NEAR(g.values[0], -1.0, 1e-14);
  EXPECT_NEAR(g.values[1], 0.0, 1e-15);
}

TEST(Gradient, MatchesDenseOracle) {
  const Circuit c = hypinit::build_hea(2, 3);
  const auto theta = testutil::formula_theta(12);
  const Observable zz = Observable::z_product(3, {0, 1});
  EXPECT_NEAR(cost(c, theta, zz), oracle::kHea23Cost[0], 1e-12);
  const auto g = hypinit::gradient(c, theta, zz);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(g.values[i], oracle::kHea23Gradient[i], 1e-8) << i;
  }
}

// Property: parameter shift matches central differences (h = 1e-5).
TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 gen(77);
  constexpr double h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    const int q = 1 + trial % 6;
    const Circuit c = testutil::random_circuit(q, 2 * q + 1, 2, gen);
    const auto theta = testutil::random_theta(c.num_params(), gen);
    const Observable obs = testutil::random_observable(q, gen);
    const auto g = hypinit::gradient(c, theta, obs);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      auto tp = theta;
      auto tm = theta;
      tp[i] += h;
      tm[i] -= h;
      const double fd = (cost(c, tp, obs) - cost(c, tm, obs)) / (2 * h);
      EXPECT_LE(std::abs(g.values[i] - fd),
                std::max(1e-8, 1e-6 * std::abs(fd)))
          << "trial " << trial << " param " << i;
    }
  }
}

TEST(Gradient, WorkerCountDoesNotChangeBits) {
  std::mt19937_64 gen(8);
  const Circuit c = testutil::random_circuit(4, 12, 3, gen);
  const auto theta = testutil::random_theta(c.num_params(), gen);
  const Observable obs = testutil::random_observable(4, gen);
  const auto g1 = hypinit::gradient(c, theta, obs, {}, 1);
  const auto g3 = hypinit::gradient(c, theta, obs, {}, 3);
  EXPECT_EQ(g1.values, g3.values);
}

TEST(Gradient, ObjectiveWrapperAgrees) {
  const Circuit c = hypinit::build_strongly_entangling(2, 3);
  const Observable obs = Observable::z_product(3, {0, 2});
  const hypinit::ObservableObjective objective(c, obs);
  const auto theta = testutil::formula_theta(c.num_params());
  EXPECT_EQ(objective.gradient(theta).values,
            hypinit::gradient(c, theta, obs).values);
  EXPECT_EQ(objective.value(theta), cost(c, theta, obs));
}

TEST(QfimExact, SingleRyIsOneForAnyTheta) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 20; ++i) {
    const auto f = hypinit::qfim_exact(ry_circuit(1), testutil::random_theta(1, gen));
    EXPECT_NEAR(f.entries(0, 0), 1.0, 1e-8);
  }
}

TEST(QfimExact, ProductCircuitIsIdentity) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 20; ++i) {
    const auto f = hypinit::qfim_exact(ry_circuit(2), testutil::random_theta(2, gen));
    EXPECT_NEAR(f.entries(0, 0), 1.0, 1e-8);
    EXPECT_NEAR(f.entries(1, 1), 1.0, 1e-8);
    EXPECT_NEAR(f.entries(0, 1), 0.0, 1e-8);
    EXPECT_NEAR(f.entries(1, 0), 0.0, 1e-8);
  }
}

TEST(QfimExact, RzOnZeroStateHasNoInformation) {
  Circuit c(1);
  c.add_rotation(GateKind::RZ, 0);
  const auto f = hypinit::qfim_exact(c, std::vector{0.7});
  EXPECT_NEAR(f.entries(0, 0), 0.0, 1e-12);
}

TEST(QfimExact, MatchesDenseOracle) {
  const Circuit c = hypinit::build_hea(2, 2);
  const auto f = hypinit::qfim_exact(c, testutil::formula_theta(8));
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t col = 0; col < 8; ++col) {
      EXPECT_NEAR(f.entries(r, col), oracle::kHea22Qfim[r * 8 + col], 1e-8)
          << r << "," << col;
    }
  }
}

TEST(QfimExact, TooManyParametersThrow) {
  const Circuit c = hypinit::build_strongly_entangling(6, 4);
  ASSERT_GT(c.num_params(), hypinit::kExactQfimMaxParams);
  EXPECT_THROW(hypinit::qfim_exact(c, std::vector<double>(c.num_params(), 0.1)),
               hypinit::Error);
}

// Property: symmetric and PSD on 50 random cases.
TEST(QfimExact, SymmetricPositiveSemidefinite) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = 1 + trial % 5;
    const Circuit c = testutil::random_circuit(q, 2 * q, 2, gen);
    if (c.num_params() == 0) {
      continue;
    }
    const auto f = hypinit::qfim_exact(c, testutil::random_theta(c.num_params(), gen));
    EXPECT_TRUE(hypinit::is_symmetric(f.entries));
    for (double ev : hypinit::hermitian_eigenvalues(f.entries)) {
      EXPECT_GE(ev, -1e-8) << trial;
    }
  }
}

TEST(QfimBlock, SingleLayerEqualsExact) {
  const Circuit c = hypinit::build_strongly_entangling(1, 3);
  const auto theta = testutil::formula_theta(c.num_params());
  const auto exact = hypinit::qfim_exact(c, theta);
  const auto block = hypinit::qfim_block_diagonal(c, theta);
  EXPECT_EQ(block.fidelity, hypinit::QfimFidelity::BlockDiagonal);
  EXPECT_LE((exact.entries - block.entries).frobenius_norm(), 1e-12);
}

TEST(QfimBlock, ProductCircuitTwoLayersEqualsExact) {
  // Each layer rotates its own qubits. Stacking RY on one qubit would sum the
  // angles and couple the layers.
  Circuit c(4);
  c.add_rotation(GateKind::RY, 0, 0);
  c.add_rotation(GateKind::RY, 1, 0);
  c.add_rotation(GateKind::RY, 2, 1);
  c.add_rotation(GateKind::RY, 3, 1);
  const std::vector<double> theta = {0.3, 1.1, -0.4, 2.2};
  const auto exact = hypinit::qfim_exact(c, theta);
  const auto block = hypinit::qfim_block_diagonal(c, theta);
  EXPECT_LE((exact.entries - block.entries).frobenius_norm(), 1e-12);
}

TEST(QfimBlock, OffBlockEntriesAreZero) {
  const Circuit c = hypinit::build_strongly_entangling(3, 3);
  const auto block = hypinit::qfim_block_diagonal(c, testutil::formula_theta(c.num_params()));
  const auto slots = c.layer_slots();
  std::vector<int> layer_of(c.num_params());
  for (std::size_t l = 0; l < slots.size(); ++l) {
    for (int s : slots[l]) {
      layer_of[s] = static_cast<int>(l);
    }
  }
  for (std::size_t r = 0; r < c.num_params(); ++r) {
    for (std::size_t k = 0; k < c.num_params(); ++k) {
      if (layer_of[r] != layer_of[k]) {
        EXPECT_EQ(block.entries(r, k), 0.0);
      }
    }
  }
}

// Property: block diagonal keeps the exact diagonal (3 layers, 3 qubits).
TEST(QfimBlock, DiagonalMatchesExact) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = testutil::random_circuit(3, 5, 3, gen);
    const auto theta = testutil::random_theta(c.num_params(), gen);
    const auto exact = hypinit::qfim_exact(c, theta);
    const auto block = hypinit::qfim_block_diagonal(c, theta);
    for (std::size_t i = 0; i < c.num_params(); ++i) {
      EXPECT_NEAR(block.entries(i, i), exact.entries(i, i), 1e-8);
    }
  }
}

TEST(QfimBlock, UntaggedCircuitThrows) {
  Circuit c(1);
  c.add_rotation(GateKind::RY, 0);
  EXPECT_THROW(hypinit::qfim_block_diagonal(c, std::vector{0.1}), hypinit::Error);
}

TEST(QfimEmpirical, OuterProduct) {
  const auto f = hypinit::qfim_empirical(hypinit::Gradient{{1.0, 2.0}});
  EXPECT_EQ(f.entries, Matrix::from_rows({{1, 2}, {2, 4}}));
  const auto z = hypinit::qfim_empirical(hypinit::Gradient{{0.0, 0.0}});
  EXPECT_EQ(z.entries, Matrix(2, 2));
}

TEST(QfimEmpirical, TraceIsSquaredNorm) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = hypinit::Gradient{testutil::random_theta(1 + trial % 30, gen)};
    EXPECT_DOUBLE_EQ(hypinit::qfim_empirical(g).entries.trace(), g.squared_norm());
  }
}

TEST(QfimAuto, Ladder) {
  const Circuit small = hypinit::build_strongly_entangling(2, 3);
  const auto obj_small =
      hypinit::ObservableObjective(small, Observable::z_product(3, {0}));
  EXPECT_EQ(hypinit::qfim_auto(small, testutil::formula_theta(18), &obj_small).fidelity,
            hypinit::QfimFidelity::Exact);

  const Circuit big = hypinit::build_strongly_entangling(8, 3);
  EXPECT_EQ(hypinit::qfim_auto(big, testutil::formula_theta(72), nullptr).fidelity,
            hypinit::QfimFidelity::BlockDiagonal);

  Circuit flat(2);
  for (int i = 0; i < 70; ++i) {
    flat.add_rotation(GateKind::RY, i % 2);
  }
  const auto obj = hypinit::ObservableObjective(flat, Observable::z_product(2, {1}));
  EXPECT_EQ(hypinit::qfim_auto(flat, testutil::formula_theta(70), &obj).fidelity,
            hypinit::QfimFidelity::Empirical);
  EXPECT_THROW(hypinit::qfim_auto(flat, testutil::formula_theta(70), nullptr),
               hypinit::Error);
}

TEST(Stabilize, AddsToDiagonal) {
  const hypinit::QfimMatrix zero{Matrix(2, 2)};
  EXPECT_EQ(hypinit::stabilize(zero, 1e-6).entries,
            Matrix::diagonal(std::vector{1e-6, 1e-6}));
  const hypinit::QfimMatrix id{Matrix::identity(2)};
  EXPECT_EQ(hypinit::stabilize(id, 1e-6).entries,
            Matrix::diagonal(std::vector{1 + 1e-6, 1 + 1e-6}));
  EXPECT_THROW(hypinit::stabilize(zero, 0.0), hypinit::Error);
  EXPECT_THROW(hypinit::stabilize(zero, -1.0), hypinit::Error);
}

TEST(Eigen, SmallExamples) {
  EXPECT_EQ(hypinit::hermitian_eigenvalues(Matrix::diagonal(std::vector{3.0, 1.0, 2.0})),
            (std::vector{3.0, 2.0, 1.0}));
  const auto two = hypinit::hermitian_eigenvalues(Matrix::from_rows({{2, 1}, {1, 2}}));
  EXPECT_NEAR(two[0], 3.0, 1e-14);
  EXPECT_NEAR(two[1], 1.0, 1e-14);
  for (double v : hypinit::hermitian_eigenvalues(Matrix::identity(7))) {
    EXPECT_EQ(v, 1.0);
  }
}

TEST(Eigen, NonSymmetricThrows) {
  EXPECT_THROW(hypinit::hermitian_eigenvalues(Matrix::from_rows({{1, 2}, {0, 1}})),
               hypinit::Error);
}

// Property: V diag(L) V^T reconstructs M; spectrum agrees with Eigen.
TEST(Eigen, ReconstructionAndCrossCheck) {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 24;
    Matrix m(n, n);
    Eigen::MatrixXd e(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r; c < n; ++c) {
        m(r, c) = m(c, r) = dist(gen);
        e(r, c) = e(c, r) = m(r, c);
      }
    }
    const auto eig = hypinit::symmetric_eigen(m);
    const Matrix rebuilt =
        eig.vectors * Matrix::diagonal(eig.values) * eig.vectors.transpose();
    EXPECT_LE((m - rebuilt).frobenius_norm(), 1e-8 * m.frobenius_norm());
    for (std::size_t i = 1; i < n; ++i) {
      EXPECT_GE(eig.values[i - 1], eig.values[i]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e);
    const Eigen::VectorXd ref = solver.eigenvalues().reverse();
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(eig.values[i], ref[i], 1e-10);
    }
  }
}

} // namespace
