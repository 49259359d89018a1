#include "kernels_impl.hpp"

namespace qd::kernels::detail {

void caxpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
  }
}

cplx cdotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm_sq_scalar(std::size_t n, const cplx* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void rot2_scalar(std::size_t n, cplx* x, cplx* y, cplx a11, cplx a12, cplx a21, cplx a22) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xi = x[i], yi = y[i];
    x[i] = mul(a11, xi) + mul(a12, yi);
    y[i] = mul(a21, xi) + mul(a22, yi);
  }
}

}  // namespace qd::kernels::detail
