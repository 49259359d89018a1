#include "qd/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qd/error.hpp"
#include "qd/kernels.hpp"

namespace qd {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: " + std::to_string(data_.size()) + " entries for " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

StateVector ComplexMatrix::column(std::size_t j) const {
  StateVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ComplexMatrix::set_column(std::size_t j, std::span<const cplx> v) {
  if (v.size() != rows_) throw DimensionError("set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix t = *this;
  for (auto& z : t.data_) z = std::conj(z);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) noexcept {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()));
  }
  const auto& k = kernels::active();
  ComplexMatrix c(a.rows(), b.cols());
  // Row i of C accumulates A[i,l] · (row l of B); rows are contiguous.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ci = c.data() + i * c.cols();
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const cplx ail = a(i, l);
      if (ail == cplx{}) continue;
      k.caxpy(b.cols(), ail, b.data() + l * b.cols(), ci);
    }
  }
  return c;
}

StateVector operator*(const ComplexMatrix& m, std::span<const cplx> v) {
  if (m.cols() != v.size()) throw DimensionError("matvec: length mismatch");
  StateVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

cplx trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace: non-square matrix");
  cplx t{};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double frobenius_norm(const ComplexMatrix& m) {
  return std::sqrt(kernels::active().norm_sq(m.size(), m.data()));
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return frobenius_norm(a - b);
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const cplx& z : m.entries()) best = std::max(best, std::abs(z));
  return best;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermiticity_defect: non-square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.is_square() && hermiticity_defect(m) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("commutator: operands must be square of equal size");
  return a * b - b * a;
}

ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> w) {
  ComplexMatrix m(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  return m;
}

cplx inner(std::span<const cplx> v, std::span<const cplx> w) {
  if (v.size() != w.size()) throw DimensionError("inner: length mismatch");
  return kernels::active().cdotc(v.size(), v.data(), w.data());
}

double norm(std::span<const cplx> v) {
  return std::sqrt(kernels::active().norm_sq(v.size(), v.data()));
}

StateVector kron(std::span<const cplx> v, std::span<const cplx> w) {
  StateVector out(v.size() * w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) out[i * w.size() + j] = v[i] * w[j];
  return out;
}

cplx expectation(const ComplexMatrix& m, std::span<const cplx> v) {
  const StateVector mv = m * v;
  return inner(v, mv);
}

}  // namespace qd
