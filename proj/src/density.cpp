#include "qd/density.hpp"

#include <cmath>
#include <string>

#include "qd/eig.hpp"
#include "qd/error.hpp"

namespace qd {

DensityMatrix::DensityMatrix(ComplexMatrix m, BipartiteDims dims) : m_(std::move(m)), dims_(dims) {
  if (!m_.is_square() || m_.rows() != dims_.total() || dims_.a == 0 || dims_.b == 0) {
    throw DimensionError("DensityMatrix: matrix " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()) + " inconsistent with dims (" +
                         std::to_string(dims_.a) + ", " + std::to_string(dims_.b) + ")");
  }
  const double defect = hermiticity_defect(m_);
  if (defect > DensityTolerances::hermitian) {
    throw SymmetryError("DensityMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const cplx tr = trace(m_);
  if (std::abs(tr - 1.0) > DensityTolerances::trace) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  // Remove the sub-tolerance anti-Hermitian part so downstream spectra are real.
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    m_(i, i) = m_(i, i).real();
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      const cplx avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
  const double lowest = hermitian_eigenvalues(m_).front();
  if (lowest < DensityTolerances::min_eigenvalue) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(lowest));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m)
    : DensityMatrix(m, BipartiteDims{1, m.rows()}) {}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi, BipartiteDims dims) {
  const double n = norm(psi);
  if (n == 0.0) throw DomainError("DensityMatrix::pure: zero vector");
  ComplexMatrix m = outer(psi, psi);
  m *= 1.0 / (n * n);
  return DensityMatrix(std::move(m), dims);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep) {
  if (!m.is_square() || m.rows() != dims.total()) {
    throw DimensionError("partial_trace: dims (" + std::to_string(dims.a) + ", " +
                         std::to_string(dims.b) + ") inconsistent with " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const std::size_t da = dims.a, db = dims.b;
  if (keep == Subsystem::B) {
    ComplexMatrix out(db, db);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j) out(i, j) += m(a * db + i, a * db + j);
    return out;
  }
  ComplexMatrix out(da, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t b = 0; b < db; ++b) out(i, j) += m(i * db + b, j * db + b);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  const std::size_t d = reduced.rows();
  return DensityMatrix(std::move(reduced), BipartiteDims{1, d});
}

}  // namespace qd
