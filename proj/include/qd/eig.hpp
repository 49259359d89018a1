#pragma once

#include <functional>
#include <vector>

#include "qd/matrix.hpp"

namespace qd {

struct HermitianEig {
  std::vector<double> eigenvalues;  ///< ascending
  ComplexMatrix eigenvectors;       ///< column k belongs to eigenvalues[k]
};

struct JacobiOptions {
  /// Stop when the off-diagonal Frobenius norm falls below
  /// off_diag_tol · ‖M‖_F (relative, so tiny matrices keep
  /// their relative accuracy).
  double off_diag_tol = 1e-14;
  int max_sweeps = 100;
  /// Admissible deviation from Hermiticity of the input.
  double hermitian_tol = 1e-10;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
/// Throws DimensionError for non-square input, SymmetryError for
/// non-Hermitian input.
HermitianEig hermitian_eig(const ComplexMatrix& m, const JacobiOptions& opts = {});

/// Eigenvalues only (ascending); skips eigenvector accumulation.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const JacobiOptions& opts = {});

/// V diag(g(λ)) V†. Throws DomainError if g yields a non-finite value.
ComplexMatrix matrix_func(const ComplexMatrix& m, const std::function<double(double)>& g);
ComplexMatrix matrix_func(const HermitianEig& eig, const std::function<double(double)>& g);

}  // namespace qd
