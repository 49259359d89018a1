// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace qd::kernels::detail {
namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// a * v for a broadcast complex a = (ar, ai).
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void caxpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(ar, ai, load2(x + i))));
  if (i < n) caxpy_scalar(n - i, a, x + i, y + i);
}

cplx cdotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  __m256d same = _mm256_setzero_pd();   // [xr·yr, xi·yi, ...]
  __m256d cross = _mm256_setzero_pd();  // [xr·yi, xi·yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double c[4];
  _mm256_store_pd(c, cross);
  cplx acc(hsum(same), (c[0] - c[1]) + (c[2] - c[3]));
  if (i < n) acc += cdotc_scalar(n - i, x + i, y + i);
  return acc;
}

double norm_sq_avx2(std::size_t n, const cplx* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  if (i < n) s += norm_sq_scalar(n - i, x + i);
  return s;
}

void rot2_avx2(std::size_t n, cplx* x, cplx* y, cplx a11, cplx a12, cplx a21, cplx a22) {
  const __m256d r11 = _mm256_set1_pd(a11.real()), i11 = _mm256_set1_pd(a11.imag());
  const __m256d r12 = _mm256_set1_pd(a12.real()), i12 = _mm256_set1_pd(a12.imag());
  const __m256d r21 = _mm256_set1_pd(a21.real()), i21 = _mm256_set1_pd(a21.imag());
  const __m256d r22 = _mm256_set1_pd(a22.real()), i22 = _mm256_set1_pd(a22.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    store2(x + i, _mm256_add_pd(cmul(r11, i11, xv), cmul(r12, i12, yv)));
    store2(y + i, _mm256_add_pd(cmul(r21, i21, xv), cmul(r22, i22, yv)));
  }
  if (i < n) rot2_scalar(n - i, x + i, y + i, a11, a12, a21, a22);
}

}  // namespace qd::kernels::detail
