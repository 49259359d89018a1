#include "qd/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qd/error.hpp"
#include "qd/kernels.hpp"

namespace qd {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Diagonalizes `a` in place. When `vt` is non-null it accumulates Vᵀ, so that
// row k of *vt holds eigenvector k and every update touches contiguous rows.
void jacobi(ComplexMatrix& a, ComplexMatrix* vt, const JacobiOptions& opts) {
  const std::size_t n = a.rows();
  const auto& k = kernels::active();
  const double scale = frobenius_norm(a);
  const double stop = opts.off_diag_tol * scale;

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double babs = std::abs(b);
        if (babs <= 1e-300 || babs < 1e-18 * scale) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const cplx phase = b / babs;  // e^{iφ}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * babs);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Rows of J†A, with J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
        k.rot2(n, a.data() + p * n, a.data() + q * n, c, -s * phase, s, c * phase);
        // Right multiplication by J restores Hermiticity; copy rows into columns.
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          a(r, p) = std::conj(a(p, r));
          a(r, q) = std::conj(a(q, r));
        }
        a(p, p) = app - t * babs;
        a(q, q) = aqq + t * babs;
        a(p, q) = a(q, p) = 0.0;

        if (vt != nullptr) {
          const cplx phase_c = std::conj(phase);
          k.rot2(n, vt->data() + p * n, vt->data() + q * n, c, -s * phase_c, s, c * phase_c);
        }
      }
    }
  }
}

ComplexMatrix checked_copy(const ComplexMatrix& m, const JacobiOptions& opts) {
  if (!m.is_square()) {
    throw DimensionError("hermitian_eig: non-square " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  const double defect = hermiticity_defect(m);
  if (defect > opts.hermitian_tol) {
    throw SymmetryError("hermitian_eig: input not Hermitian (defect " + std::to_string(defect) +
                        ")");
  }
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  return a;
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m, const JacobiOptions& opts) {
  ComplexMatrix a = checked_copy(m, opts);
  const std::size_t n = a.rows();
  ComplexMatrix vt = ComplexMatrix::identity(n);
  jacobi(a, &vt, opts);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.eigenvalues[col] = a(src, src).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, col) = vt(src, r);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const JacobiOptions& opts) {
  ComplexMatrix a = checked_copy(m, opts);
  jacobi(a, nullptr, opts);
  std::vector<double> w(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) w[i] = a(i, i).real();
  std::sort(w.begin(), w.end());
  return w;
}

ComplexMatrix matrix_func(const HermitianEig& eig, const std::function<double(double)>& g) {
  const std::size_t n = eig.eigenvalues.size();
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double gk = g(eig.eigenvalues[k]);
    if (!std::isfinite(gk)) {
      throw DomainError("matrix_func: function undefined at eigenvalue " +
                        std::to_string(eig.eigenvalues[k]));
    }
    if (gk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = gk * v(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(v(j, k));
    }
  }
  return out;
}

ComplexMatrix matrix_func(const ComplexMatrix& m, const std::function<double(double)>& g) {
  return matrix_func(hermitian_eig(m), g);
}

}  // namespace qd
