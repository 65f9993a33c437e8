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
#include <bit>

#include "hypinit/simd/kernels.hpp"

namespace hypinit::simd {
namespace {

void apply_matrix2_scalar(cplx *amps, std::size_t n, std::size_t stride,
                          const Matrix2 &m) {
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const cplx a = amps[k];
      const cplx b = amps[k + stride];
      amps[k] = m[0] * a + m[1] * b;
      amps[k + stride] = m[2] * a + m[3] * b;
    }
  }
}

cplx inner_product_scalar(const cplx *a, const cplx *b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx pauli_expectation_scalar(const cplx *psi, std::size_t n,
                              std::uint64_t x_mask, std::uint64_t z_mask) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = psi[i ^ x_mask];
    const cplx b = psi[i];
    const double sign = (std::popcount(i & z_mask) & 1U) ? -1.0 : 1.0;
    re += sign * (a.real() * b.real() + a.imag() * b.imag());
    im += sign * (a.real() * b.imag() - a.imag() * b.real());
  }
  return {re, im};
}

void matvec_scalar(const cplx *a, const cplx *x, cplx *y, std::size_t rows,
                   std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx *row = a + r * cols;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
      im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    y[r] = {re, im};
  }
}

void squared_magnitudes_scalar(const cplx *psi, double *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = psi[i].real() * psi[i].real() + psi[i].imag() * psi[i].imag();
  }
}

} // namespace

namespace detail {
const KernelTable kScalarTable{
    "scalar",           apply_matrix2_scalar, inner_product_scalar,
    pauli_expectation_scalar, matvec_scalar,  squared_magnitudes_scalar,
};
} // namespace detail

const KernelTable &scalar_kernels() { return detail::kScalarTable; }

} // namespace hypinit::simd
