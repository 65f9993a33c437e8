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

#include <bit>
#include <cmath>
#include <numbers>

#include "hypinit/simulator.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

namespace {

using hypinit::Circuit;
using hypinit::GateKind;
using hypinit::Observable;
using hypinit::StateVector;
using hypinit::cplx;
constexpr double pi = std::numbers::pi;

Circuit single(GateKind kind) {
  Circuit c(1);
  c.add_rotation(kind, 0);
  return c;
}

std::size_t count_kind(const Circuit &c, GateKind kind) {
  std::size_t n = 0;
  for (const auto &g : c.gates()) {
    n += g.kind == kind ? 1 : 0;
  }
  return n;
}

TEST(ApplyCircuit, RyPiFlipsToOne) {
  const auto s = hypinit::apply_circuit(single(GateKind::RY), std::vector{pi});
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(s[1].real(), 1.0, 1e-15);
}

TEST(ApplyCircuit, EmptyCircuitIsZeroState) {
  const auto s = hypinit::apply_circuit(Circuit(2), {});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], cplx(1.0));
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_EQ(s[i], cplx(0.0));
  }
}

TEST(ApplyCircuit, RyHalfPi) {
  const auto s =
      hypinit::apply_circuit(single(GateKind::RY), std::vector{pi / 2});
  EXPECT_NEAR(s[0].real(), std::cos(pi / 4), 1e-15);
  EXPECT_NEAR(s[1].real(), std::sin(pi / 4), 1e-15);
}

TEST(ApplyCircuit, ParameterCountMismatchThrows) {
  EXPECT_THROW(hypinit::apply_circuit(single(GateKind::RY), std::vector{1.0, 2.0}),
               hypinit::Error);
}

TEST(ApplyCircuit, MissingFeaturesThrow) {
  const Circuit c = hypinit::embed_angles(hypinit::build_hea(1, 2), 2);
  const std::vector<double> theta(c.num_params(), 0.1);
  EXPECT_THROW(hypinit::apply_circuit(c, theta), hypinit::Error);
  EXPECT_THROW(hypinit::apply_circuit(c, theta, std::vector{0.1}),
               hypinit::Error);
  EXPECT_NO_THROW(hypinit::apply_circuit(c, theta, std::vector{0.1, 0.2}));
}

TEST(ApplyCircuit, MatchesDenseOracleOnStronglyEntangling) {
  const Circuit c = hypinit::build_strongly_entangling(2, 3);
  const auto s = hypinit::apply_circuit(c, testutil::formula_theta(18));
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(s[i].real(), oracle::kSel23Real[i], 1e-12) << i;
    EXPECT_NEAR(s[i].imag(), oracle::kSel23Imag[i], 1e-12) << i;
  }
}

TEST(Expectation, BasisStates) {
  const Observable z = Observable::z_product(1, {0});
  EXPECT_DOUBLE_EQ(hypinit::expectation(StateVector(1), z), 1.0);
  const auto one = hypinit::apply_circuit(single(GateKind::RY), std::vector{pi});
  EXPECT_NEAR(hypinit::expectation(one, z), -1.0, 1e-15);
  const auto plus =
      hypinit::apply_circuit(single(GateKind::RY), std::vector{pi / 2});
  EXPECT_NEAR(hypinit::expectation(plus, z), 0.0, 1e-15);
}

TEST(Expectation, QubitMismatchThrows) {
  EXPECT_THROW(hypinit::expectation(StateVector(2), Observable::z_product(1, {0})),
               hypinit::Error);
}

TEST(Expectation, YPhaseHandled) {
  // RX(-pi/2)|0> = (|0> + i|1>)/sqrt2 is the +1 eigenstate of Y.
  const auto s = hypinit::apply_circuit(single(GateKind::RX), std::vector{-pi / 2});
  EXPECT_NEAR(hypinit::expectation(s, Observable(1, {{1.0, "Y"}})), 1.0, 1e-15);
}

TEST(Observable, RejectsBadWords) {
  EXPECT_THROW(Observable(2, {{1.0, "ZZZ"}}), hypinit::Error);
  EXPECT_THROW(Observable(2, {{1.0, "ZQ"}}), hypinit::Error);
}

TEST(Builders, StronglyEntanglingShapes) {
  EXPECT_EQ(hypinit::build_strongly_entangling(8, 4).num_params(), 96u);
  EXPECT_EQ(hypinit::build_strongly_entangling(5, 4).num_params(), 60u);
  const Circuit small = hypinit::build_strongly_entangling(1, 2);
  EXPECT_EQ(small.num_params(), 6u);
  EXPECT_EQ(count_kind(small, GateKind::Rot), 2u);
  EXPECT_EQ(count_kind(small, GateKind::CNOT), 1u);
  EXPECT_THROW(hypinit::build_strongly_entangling(1, 1), hypinit::Error);
}

TEST(Builders, StronglyEntanglingRangeSchedule) {
  const Circuit c = hypinit::build_strongly_entangling(3, 4);
  std::vector<std::pair<int, int>> cnots;
  for (const auto &g : c.gates()) {
    if (g.kind == GateKind::CNOT) {
      cnots.emplace_back(*g.control, g.target);
    }
  }
  ASSERT_EQ(cnots.size(), 12u);
  for (int layer = 0; layer < 3; ++layer) {
    const int r = 1 + layer % 3;
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(cnots[layer * 4 + i], std::make_pair(i, (i + r) % 4));
    }
  }
}

TEST(Builders, TwoDesignShapes) {
  EXPECT_EQ(hypinit::build_two_design(5, 4, 7).num_params(), 20u);
  const Circuit small = hypinit::build_two_design(1, 2, 7);
  EXPECT_EQ(small.num_params(), 2u);
  EXPECT_EQ(count_kind(small, GateKind::RYFixed), 2u);
  EXPECT_EQ(count_kind(small, GateKind::CZ), 1u);
  EXPECT_EQ(hypinit::build_two_design(6, 5, 99), hypinit::build_two_design(6, 5, 99));
}

TEST(Builders, TwoDesignSeedsChangeAxes) {
  int differing = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    differing += hypinit::build_two_design(5, 4, seed) ==
                         hypinit::build_two_design(5, 4, seed + 100)
                     ? 0
                     : 1;
  }
  EXPECT_GT(differing, 0);
}

TEST(Builders, HeaShapes) {
  EXPECT_EQ(hypinit::build_hea(5, 4).num_params(), 40u);
  EXPECT_EQ(hypinit::build_hea(1, 2).num_params(), 4u);
  const Circuit c = hypinit::build_hea(1, 3);
  EXPECT_EQ(count_kind(c, GateKind::RY) + count_kind(c, GateKind::RZ), 6u);
  EXPECT_EQ(count_kind(c, GateKind::CNOT), 2u);
}

TEST(Builders, Pure) {
  EXPECT_EQ(hypinit::build_strongly_entangling(4, 3),
            hypinit::build_strongly_entangling(4, 3));
  EXPECT_EQ(hypinit::build_hea(4, 3), hypinit::build_hea(4, 3));
}

TEST(Embedding, PiOnOneQubit) {
  Circuit c(1);
  const Circuit e = hypinit::embed_angles(c, 1);
  const auto s = hypinit::apply_circuit(e, {}, std::vector{pi});
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(s[1].real(), 1.0, 1e-15);
}

TEST(Embedding, ZeroFeaturesAreIdentity) {
  const Circuit e = hypinit::embed_angles(Circuit(4), 4);
  const auto s = hypinit::apply_circuit(e, {}, std::vector(4, 0.0));
  EXPECT_EQ(s[0], cplx(1.0));
}

TEST(Embedding, HalfPiOnQubitZero) {
  const Circuit e = hypinit::embed_angles(Circuit(2), 2);
  const auto s = hypinit::apply_circuit(e, {}, std::vector{pi / 2, 0.0});
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(s[0].real(), h, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-15);
  EXPECT_NEAR(s[2].real(), h, 1e-15);
  EXPECT_NEAR(std::abs(s[3]), 0.0, 1e-15);
}

TEST(Embedding, TooManyFeaturesThrow) {
  EXPECT_THROW(hypinit::embed_angles(Circuit(2), 3), hypinit::Error);
}

TEST(Circuit, SlotUsedTwiceRejected) {
  hypinit::Gate a;
  a.kind = GateKind::RY;
  a.param_slots = {0};
  hypinit::Gate b = a;
  b.target = 1;
  EXPECT_THROW(Circuit::from_gates(2, {a, b}), hypinit::Error);
}

TEST(Circuit, QubitOutOfRangeRejected) {
  Circuit c(2);
  EXPECT_THROW(c.add_rotation(GateKind::RY, 2), hypinit::Error);
  EXPECT_THROW(c.add_fixed(GateKind::CNOT, 1, 1), hypinit::Error);
}

// Property: norm preserved for 200 random circuits up to 10 qubits.
TEST(Properties, NormPreservation) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int q = 1 + trial % 10;
    const Circuit c = testutil::random_circuit(q, 3 * q, 2, gen);
    const auto s = hypinit::apply_circuit(c, testutil::random_theta(c.num_params(), gen));
    EXPECT_NEAR(s.norm(), 1.0, 1e-10) << trial;
  }
}

// Property: G followed by G^dagger restores the input for every kind.
TEST(Properties, GateThenInverse) {
  std::mt19937_64 gen(5);
  const std::vector<double> theta = {0.37, -1.2, 2.9};
  for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::Rot,
                        GateKind::CNOT, GateKind::CZ, GateKind::RYFixed}) {
    hypinit::Gate g;
    g.kind = kind;
    g.target = 1;
    if (kind == GateKind::CNOT || kind == GateKind::CZ) {
      g.control = 2;
    }
    for (int k = 0; k < hypinit::param_count(kind); ++k) {
      g.param_slots.push_back(k);
    }
    const bool controlled = g.control.has_value();
    std::vector<cplx> amps(8);
    std::normal_distribution<double> dist;
    double norm = 0.0;
    for (auto &a : amps) {
      a = {dist(gen), dist(gen)};
      norm += std::norm(a);
    }
    for (auto &a : amps) {
      a /= std::sqrt(norm);
    }
    const auto original = amps;
    hypinit::apply_gate(amps, 3, 1, g, theta, {});
    if (controlled) {
      hypinit::apply_gate(amps, 3, 1, g, theta, {});
    } else {
      const auto m = hypinit::gate_matrix(g, theta, {});
      const hypinit::simd::Matrix2 dag = {std::conj(m[0]), std::conj(m[2]),
                                          std::conj(m[1]), std::conj(m[3])};
      const std::size_t stride = std::size_t{1} << (3 - 1 - g.target);
      hypinit::simd::scalar_kernels().apply_matrix2(amps.data(), amps.size(),
                                                    stride, dag);
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
      EXPECT_NEAR(std::abs(amps[i] - original[i]), 0.0, 1e-10)
          << hypinit::to_string(kind);
    }
  }
}

// Property: CNOT and CZ act on computational basis states per truth table.
TEST(Properties, ControlledTruthTables) {
  for (int q = 2; q <= 3; ++q) {
    const std::size_t dim = std::size_t{1} << q;
    for (int ctrl = 0; ctrl < q; ++ctrl) {
      for (int tgt = 0; tgt < q; ++tgt) {
        if (ctrl == tgt) {
          continue;
        }
        for (GateKind kind : {GateKind::CNOT, GateKind::CZ}) {
          hypinit::Gate g;
          g.kind = kind;
          g.target = tgt;
          g.control = ctrl;
          for (std::size_t basis = 0; basis < dim; ++basis) {
            std::vector<cplx> amps(dim);
            amps[basis] = 1.0;
            hypinit::apply_gate(amps, q, 1, g, {}, {});
            const bool c_on = (basis >> (q - 1 - ctrl)) & 1U;
            const bool t_on = (basis >> (q - 1 - tgt)) & 1U;
            std::size_t expect_index = basis;
            double expect_sign = 1.0;
            if (kind == GateKind::CNOT && c_on) {
              expect_index = basis ^ (std::size_t{1} << (q - 1 - tgt));
            }
            if (kind == GateKind::CZ && c_on && t_on) {
              expect_sign = -1.0;
            }
            for (std::size_t i = 0; i < dim; ++i) {
              const cplx want = i == expect_index ? expect_sign : 0.0;
              EXPECT_EQ(amps[i], want)
                  << hypinit::to_string(kind) << " q=" << q << " c=" << ctrl
                  << " t=" << tgt << " basis=" << basis;
            }
          }
        }
      }
    }
  }
}

TEST(Properties, IdentityObservableIsOne) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int q = 1 + trial % 6;
    const Circuit c = testutil::random_circuit(q, 2 * q, 2, gen);
    const auto s = hypinit::apply_circuit(c, testutil::random_theta(c.num_params(), gen));
    EXPECT_NEAR(hypinit::expectation(s, Observable(q, {{1.0, std::string(q, 'I')}})),
                1.0, 1e-12);
  }
}

TEST(CircuitUnitary, ColumnsAreStates) {
  std::mt19937_64 gen(3);
  const Circuit c = testutil::random_circuit(3, 6, 2, gen);
  const auto theta = testutil::random_theta(c.num_params(), gen);
  const auto u = hypinit::circuit_unitary(c, theta);
  const auto s = hypinit::apply_circuit(c, theta);
  for (std::size_t r = 0; r < 8; ++r) {
    EXPECT_NEAR(std::abs(u[r * 8] - s[r]), 0.0, 1e-13);
  }
}

} // namespace
