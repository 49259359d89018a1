#pragma once

#include <cstddef>

#include "qd/matrix.hpp"

namespace qd {

enum class Subsystem { A, B };

struct BipartiteDims {
  std::size_t a = 1;
  std::size_t b = 1;
  std::size_t total() const noexcept { return a * b; }
  bool operator==(const BipartiteDims&) const = default;
};

/// Tolerances every DensityMatrix satisfies.
struct DensityTolerances {
  static constexpr double hermitian = 1e-12;
  static constexpr double trace = 1e-12;
  static constexpr double min_eigenvalue = -1e-10;
};

/// Hermitian, unit-trace, positive-semidefinite matrix on H_A ⊗ H_B with the
/// A factor as the slow index. Validated on construction.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix m, BipartiteDims dims);
  /// Single-system state (d_A = 1).
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix pure(std::span<const cplx> psi, BipartiteDims dims);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  BipartiteDims dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
  BipartiteDims dims_;
};

/// Tr_A or Tr_B of a bipartite operator given its dims.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep);

/// Reduced state on the kept subsystem; the result has dims (d_keep, 1)
/// re-labelled as a single system (d_A = 1, d_B = d_keep).
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

}  // namespace qd
