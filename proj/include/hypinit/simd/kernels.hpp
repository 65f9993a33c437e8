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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hypinit::simd {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<cplx, 4>;

// Each kernel exists as a portable scalar reference and, on x86-64 builds, an
// AVX2+FMA variant. The variants agree to rounding (see test_kernels.cpp);
// they are not bit-identical because the vector reductions reassociate sums.

/// Applies `m` to every amplitude pair (i, i + stride) where bit `stride` of i
/// is clear. `n` must be a multiple of 2 * stride.
using ApplyMatrix2Fn = void (*)(cplx *amps, std::size_t n, std::size_t stride,
                                const Matrix2 &m);

/// Sum_i conj(a_i) * b_i.
using InnerProductFn = cplx (*)(const cplx *a, const cplx *b, std::size_t n);

/// <psi|P|psi> without the i^{#Y} phase, where P flips the bits in `x_mask`
/// and contributes a sign (-1)^{popcount(i & z_mask)}:
/// Sum_i conj(psi_{i ^ x_mask}) * psi_i * (-1)^{popcount(i & z_mask)}.
using PauliExpectationFn = cplx (*)(const cplx *psi, std::size_t n,
                                    std::uint64_t x_mask, std::uint64_t z_mask);

/// y = A x for a row-major rows x cols matrix.
using MatVecFn = void (*)(const cplx *a, const cplx *x, cplx *y,
                          std::size_t rows, std::size_t cols);

/// out_i = |psi_i|^2.
using SquaredMagnitudesFn = void (*)(const cplx *psi, double *out,
                                     std::size_t n);

struct KernelTable {
  std::string_view name;
  ApplyMatrix2Fn apply_matrix2;
  InnerProductFn inner_product;
  PauliExpectationFn pauli_expectation;
  MatVecFn matvec;
  SquaredMagnitudesFn squared_magnitudes;
};

const KernelTable &scalar_kernels();

/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable *avx2_kernels();

/// The table used by the simulator. Chosen on first use: the
/// HYPINIT_KERNELS environment variable ("scalar", "avx2", "auto") wins,
/// otherwise the widest supported variant.
const KernelTable &active_kernels();

/// Overrides the active table. Accepts "scalar", "avx2" or "auto"; throws
/// std::invalid_argument for unknown or unsupported names.
void select_kernels(std::string_view name);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(HYPINIT_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
} // namespace detail

} // namespace hypinit::simd
