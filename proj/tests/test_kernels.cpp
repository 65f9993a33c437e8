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

#include <complex>
#include <random>
#include <vector>

#include "hypinit/differentiation.hpp"
#include "hypinit/simd/kernels.hpp"
#include "hypinit/simulator.hpp"

namespace {

using hypinit::simd::cplx;
using hypinit::simd::KernelTable;

constexpr double kTol = 1e-12;

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<cplx> v(n);
  for (auto &x : v) {
    x = {dist(gen), dist(gen)};
  }
  return v;
}

#define REQUIRE_AVX2(var)                                                    \
  if (hypinit::simd::avx2_kernels() == nullptr) {                            \
    GTEST_SKIP() << "AVX2 variant unavailable on this build or CPU";         \
  }                                                                          \
  const KernelTable &var = *hypinit::simd::avx2_kernels()

class KernelSelection : public ::testing::Test {
protected:
  void TearDown() override { hypinit::simd::select_kernels("auto"); }
};

TEST(Kernels, ScalarTableIsNamed) {
  EXPECT_EQ(hypinit::simd::scalar_kernels().name, "scalar");
}

TEST(Kernels, ApplyMatrix2MatchesScalar) {
  REQUIRE_AVX2(avx2);
  const auto &scalar = hypinit::simd::scalar_kernels();
  const hypinit::simd::Matrix2 m = {cplx{0.3, -0.1}, cplx{0.2, 0.7},
                                    cplx{-0.5, 0.4}, cplx{0.9, 0.05}};
  for (std::size_t n : {2, 4, 8, 16, 64, 256, 1024}) {
    for (std::size_t stride = 1; stride < n; stride *= 2) {
      auto a = random_vector(n, n * 31 + stride);
      auto b = a;
      scalar.apply_matrix2(a.data(), n, stride, m);
      avx2.apply_matrix2(b.data(), n, stride, m);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(a[i].real(), b[i].real(), kTol) << n << " " << stride;
        EXPECT_NEAR(a[i].imag(), b[i].imag(), kTol) << n << " " << stride;
      }
    }
  }
}

TEST(Kernels, InnerProductMatchesScalar) {
  REQUIRE_AVX2(avx2);
  const auto &scalar = hypinit::simd::scalar_kernels();
  for (std::size_t n : {1, 2, 3, 5, 8, 17, 256, 4096}) {
    const auto a = random_vector(n, n);
    const auto b = random_vector(n, n + 1000);
    const cplx s = scalar.inner_product(a.data(), b.data(), n);
    const cplx v = avx2.inner_product(a.data(), b.data(), n);
    EXPECT_NEAR(s.real(), v.real(), kTol * n);
    EXPECT_NEAR(s.imag(), v.imag(), kTol * n);
  }
}

TEST(Kernels, PauliExpectationMatchesScalar) {
  REQUIRE_AVX2(avx2);
  const auto &scalar = hypinit::simd::scalar_kernels();
  for (int q = 1; q <= 9; ++q) {
    const std::size_t n = std::size_t{1} << q;
    const auto psi = random_vector(n, q);
    for (std::uint64_t x = 0; x < n; x += 1 + n / 7) {
      for (std::uint64_t z = 0; z < n; z += 1 + n / 5) {
        const cplx s = scalar.pauli_expectation(psi.data(), n, x, z);
        const cplx v = avx2.pauli_expectation(psi.data(), n, x, z);
        EXPECT_NEAR(s.real(), v.real(), kTol * n) << q << " " << x << " " << z;
        EXPECT_NEAR(s.imag(), v.imag(), kTol * n) << q << " " << x << " " << z;
      }
    }
  }
}

TEST(Kernels, MatVecMatchesScalar) {
  REQUIRE_AVX2(avx2);
  const auto &scalar = hypinit::simd::scalar_kernels();
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1},
                            {3, 5}, {16, 16}, {7, 33}, {64, 64}}) {
    const auto a = random_vector(rows * cols, rows);
    const auto x = random_vector(cols, cols);
    std::vector<cplx> ys(rows), yv(rows);
    scalar.matvec(a.data(), x.data(), ys.data(), rows, cols);
    avx2.matvec(a.data(), x.data(), yv.data(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      EXPECT_NEAR(ys[i].real(), yv[i].real(), kTol * cols);
      EXPECT_NEAR(ys[i].imag(), yv[i].imag(), kTol * cols);
    }
  }
}

TEST(Kernels, SquaredMagnitudesMatchScalar) {
  REQUIRE_AVX2(avx2);
  const auto &scalar = hypinit::simd::scalar_kernels();
  for (std::size_t n : {1, 2, 3, 4, 9, 128}) {
    const auto psi = random_vector(n, n);
    std::vector<double> s(n), v(n);
    scalar.squared_magnitudes(psi.data(), s.data(), n);
    avx2.squared_magnitudes(psi.data(), v.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(s[i], v[i], kTol);
    }
  }
}

TEST_F(KernelSelection, SimulatorAgreesAcrossVariants) {
  REQUIRE_AVX2(avx2);
  (void)avx2;
  const auto circuit = hypinit::build_strongly_entangling(3, 5);
  std::vector<double> theta(circuit.num_params());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = 0.3 + 0.71 * static_cast<double>(i);
  }
  const auto obs = hypinit::Observable(
      5, {{0.7, "XZIYI"}, {-0.2, "ZZIII"}, {0.4, "IIYYX"}});

  hypinit::simd::select_kernels("scalar");
  const auto s_state = hypinit::apply_circuit(circuit, theta);
  const auto s_grad = hypinit::gradient(circuit, theta, obs);
  hypinit::simd::select_kernels("avx2");
  const auto v_state = hypinit::apply_circuit(circuit, theta);
  const auto v_grad = hypinit::gradient(circuit, theta, obs);

  for (std::size_t i = 0; i < s_state.size(); ++i) {
    EXPECT_NEAR(std::abs(s_state[i] - v_state[i]), 0.0, kTol);
  }
  for (std::size_t i = 0; i < s_grad.size(); ++i) {
    EXPECT_NEAR(s_grad.values[i], v_grad.values[i], kTol);
  }
}

TEST_F(KernelSelection, UnknownNameThrows) {
  EXPECT_THROW(hypinit::simd::select_kernels("neon"), std::invalid_argument);
}

TEST_F(KernelSelection, ScalarCanBeForced) {
  hypinit::simd::select_kernels("scalar");
  EXPECT_EQ(hypinit::simd::active_kernels().name, "scalar");
}

} // namespace
