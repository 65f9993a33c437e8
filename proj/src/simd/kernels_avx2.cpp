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
// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only reachable
// through the dispatch table after a CPUID check.
#include <immintrin.h>

#include <bit>

#include "hypinit/simd/kernels.hpp"

namespace hypinit::simd {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].

inline __m256d load2(const cplx *p) {
  return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(cplx *p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// x * c for a broadcast complex scalar c.
inline __m256d mul_scalar(__m256d x, __m256d c_re, __m256d c_im) {
  return _mm256_fmaddsub_pd(x, c_re, _mm256_mul_pd(swap_re_im(x), c_im));
}

// Lane-wise complex product x * y.
inline __m256d mul_lanes(__m256d x, __m256d y) {
  return _mm256_fmaddsub_pd(
      x, _mm256_movedup_pd(y),
      _mm256_mul_pd(swap_re_im(x), _mm256_permute_pd(y, 0b1111)));
}

inline double sum_all(__m256d v) {
  const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v),
                               _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (lane0 + lane2) - (lane1 + lane3)
inline double even_minus_odd(__m256d v) {
  const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v),
                               _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

void apply_matrix2_avx2(cplx *amps, std::size_t n, std::size_t stride,
                        const Matrix2 &m) {
  if (stride == 1) {
    const __m256d c1 = _mm256_setr_pd(m[0].real(), m[0].imag(), m[2].real(),
                                      m[2].imag());
    const __m256d c2 = _mm256_setr_pd(m[1].real(), m[1].imag(), m[3].real(),
                                      m[3].imag());
    for (std::size_t k = 0; k < n; k += 2) {
      const __m256d x = load2(amps + k);
      const __m256d a = _mm256_permute2f128_pd(x, x, 0x00);
      const __m256d b = _mm256_permute2f128_pd(x, x, 0x11);
      store2(amps + k, _mm256_add_pd(mul_lanes(a, c1), mul_lanes(b, c2)));
    }
    return;
  }
  const __m256d m0r = _mm256_set1_pd(m[0].real());
  const __m256d m0i = _mm256_set1_pd(m[0].imag());
  const __m256d m1r = _mm256_set1_pd(m[1].real());
  const __m256d m1i = _mm256_set1_pd(m[1].imag());
  const __m256d m2r = _mm256_set1_pd(m[2].real());
  const __m256d m2i = _mm256_set1_pd(m[2].imag());
  const __m256d m3r = _mm256_set1_pd(m[3].real());
  const __m256d m3i = _mm256_set1_pd(m[3].imag());
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; k += 2) {
      const __m256d a = load2(amps + k);
      const __m256d b = load2(amps + k + stride);
      store2(amps + k,
             _mm256_add_pd(mul_scalar(a, m0r, m0i), mul_scalar(b, m1r, m1i)));
      store2(amps + k + stride,
             _mm256_add_pd(mul_scalar(a, m2r, m2i), mul_scalar(b, m3r, m3i)));
    }
  }
}

cplx inner_product_avx2(const cplx *a, const cplx *b, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = load2(a + i);
    const __m256d y = load2(b + i);
    acc_re = _mm256_fmadd_pd(x, y, acc_re);
    acc_im = _mm256_fmadd_pd(x, swap_re_im(y), acc_im);
  }
  double re = sum_all(acc_re);
  double im = even_minus_odd(acc_im);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx pauli_expectation_avx2(const cplx *psi, std::size_t n,
                            std::uint64_t x_mask, std::uint64_t z_mask) {
  if (n < 2) {
    return scalar_kernels().pauli_expectation(psi, n, x_mask, z_mask);
  }
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const bool swap_halves = (x_mask & 1U) != 0;
  for (std::size_t i = 0; i < n; i += 2) {
    __m256d a = load2(psi + ((i ^ x_mask) & ~std::size_t{1}));
    if (swap_halves) {
      a = _mm256_permute2f128_pd(a, a, 0x01);
    }
    const __m256d b = load2(psi + i);
    const double s0 = (std::popcount(i & z_mask) & 1U) ? -1.0 : 1.0;
    const double s1 = (std::popcount((i + 1) & z_mask) & 1U) ? -1.0 : 1.0;
    const __m256d sign = _mm256_setr_pd(s0, s0, s1, s1);
    const __m256d sa = _mm256_mul_pd(a, sign);
    acc_re = _mm256_fmadd_pd(sa, b, acc_re);
    acc_im = _mm256_fmadd_pd(sa, swap_re_im(b), acc_im);
  }
  return {sum_all(acc_re), even_minus_odd(acc_im)};
}

void matvec_avx2(const cplx *a, const cplx *x, cplx *y, std::size_t rows,
                 std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx *row = a + r * cols;
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      const __m256d u = load2(row + c);
      const __m256d v = load2(x + c);
      acc_re = _mm256_fmadd_pd(u, v, acc_re);
      acc_im = _mm256_fmadd_pd(u, swap_re_im(v), acc_im);
    }
    double re = even_minus_odd(acc_re);
    double im = sum_all(acc_im);
    for (; c < cols; ++c) {
      re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
      im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    y[r] = {re, im};
  }
}

void squared_magnitudes_avx2(const cplx *psi, double *out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(psi + i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d h = _mm256_hadd_pd(sq, sq);
    const __m256d packed = _mm256_permute4x64_pd(h, 0b1000);
    _mm_storeu_pd(out + i, _mm256_castpd256_pd128(packed));
  }
  for (; i < n; ++i) {
    out[i] = psi[i].real() * psi[i].real() + psi[i].imag() * psi[i].imag();
  }
}

} // namespace

namespace detail {
const KernelTable kAvx2Table{
    "avx2",           apply_matrix2_avx2, inner_product_avx2,
    pauli_expectation_avx2, matvec_avx2,  squared_magnitudes_avx2,
};
} // namespace detail

} // namespace hypinit::simd
