#pragma once

// Data-parallel inner loops shared by the matrix, eigensolver and measure code.
//
// Every kernel has a portable scalar reference implementation. Vectorized
// variants (AVX2+FMA on x86-64) are compiled into separate translation units
// and chosen once at startup from the running CPU's capabilities. The scalar
// table is always available so tests can compare the two paths directly.
//
// Setting QD_KERNELS=scalar in the environment forces the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace qd::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  /// y[i] += a * x[i]
  void (*caxpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
  /// Σ conj(x[i]) * y[i]
  cplx (*cdotc)(std::size_t n, const cplx* x, const cplx* y);
  /// Σ |x[i]|²
  double (*norm_sq)(std::size_t n, const cplx* x);
  /// (x, y) ← (a11·x + a12·y, a21·x + a22·y), elementwise.
  void (*rot2)(std::size_t n, cplx* x, cplx* y, cplx a11, cplx a12, cplx a21, cplx a22);
};

/// Portable reference kernels.
const KernelTable& scalar_table() noexcept;

/// AVX2 kernels, or nullptr when they were not compiled in or the CPU lacks
/// AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// The table used by the library; fixed after first call.
const KernelTable& active() noexcept;

}  // namespace qd::kernels
