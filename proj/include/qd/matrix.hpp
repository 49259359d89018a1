#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qd {

using cplx = std::complex<double>;
using StateVector = std::vector<cplx>;

/// Dense row-major complex matrix. Small sizes only (a few hundred at most).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix diagonal(std::span<const cplx> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }
  std::span<const cplx> entries() const noexcept { return data_; }

  StateVector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const cplx> v);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

StateVector operator*(const ComplexMatrix& m, std::span<const cplx> v);

cplx trace(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
/// Largest |M_ij - conj(M_ji)|. Requires a square matrix.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);

/// (A⊗B)[(i·rB+k),(j·cB+l)] = A[i,j]·B[k,l]; the left factor is the slow index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// AB − BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// |v⟩⟨w|
ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> w);
cplx inner(std::span<const cplx> v, std::span<const cplx> w);  // ⟨v|w⟩
double norm(std::span<const cplx> v);
StateVector kron(std::span<const cplx> v, std::span<const cplx> w);
/// ⟨v|M|v⟩
cplx expectation(const ComplexMatrix& m, std::span<const cplx> v);

}  // namespace qd
