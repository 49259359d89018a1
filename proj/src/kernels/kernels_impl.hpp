#pragma once

#include "qd/kernels.hpp"

namespace qd::kernels::detail {

// Plain complex product without the C99 Annex G inf/nan recovery path.
inline cplx mul(cplx a, cplx b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void caxpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y);
cplx cdotc_scalar(std::size_t n, const cplx* x, const cplx* y);
double norm_sq_scalar(std::size_t n, const cplx* x);
void rot2_scalar(std::size_t n, cplx* x, cplx* y, cplx a11, cplx a12, cplx a21, cplx a22);

#ifdef QD_HAVE_AVX2
void caxpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y);
cplx cdotc_avx2(std::size_t n, const cplx* x, const cplx* y);
double norm_sq_avx2(std::size_t n, const cplx* x);
void rot2_avx2(std::size_t n, cplx* x, cplx* y, cplx a11, cplx a12, cplx a21, cplx a22);
#endif

}  // namespace qd::kernels::detail
