#include "qd/spin.hpp"

#include <cmath>
#include <string>

#include "qd/eig.hpp"
#include "qd/error.hpp"

namespace qd {

Spin Spin::from_value(double s) {
  const double twice = 2.0 * s;
  const double rounded = std::round(twice);
  if (!(rounded >= 1.0) || std::abs(twice - rounded) > 1e-12 || rounded > 1e6) {
    throw DomainError("spin must be a positive half-integer, got " + std::to_string(s));
  }
  return Spin(static_cast<int>(rounded));
}

ComplexMatrix SpinTriple::along(const Vec3& axis) const {
  return x * axis[0] + y * axis[1] + z * axis[2];
}

SpinTriple spin_operators(Spin s) {
  const std::size_t d = s.dim();
  const double ss = s.value() * (s.value() + 1.0);
  ComplexMatrix raise(d, d);
  ComplexMatrix z(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const double m = s.m(i);
    z(i, i) = m;
    if (i > 0) raise(i - 1, i) = std::sqrt(ss - m * (m + 1.0));
  }
  const ComplexMatrix lower = raise.adjoint();
  ComplexMatrix x = (raise + lower) * 0.5;
  ComplexMatrix y = (raise - lower) * cplx(0.0, -0.5);
  return SpinTriple{s, std::move(x), std::move(y), std::move(z)};
}

ComplexMatrix rotation(Spin s, const Vec3& axis, double angle) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(len - 1.0) > 1e-10) {
    throw DomainError("rotation: axis is not a unit vector (|k| = " + std::to_string(len) + ")");
  }
  const HermitianEig eig = hermitian_eig(spin_operators(s).along(axis));
  const std::size_t d = s.dim();
  ComplexMatrix u(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const cplx phase = std::polar(1.0, -angle * eig.eigenvalues[k]);
    for (std::size_t i = 0; i < d; ++i) {
      const cplx vik = phase * eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < d; ++j) u(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return u;
}

ParityOperator parity_z(Spin s) {
  const std::size_t d = s.dim();
  ComplexMatrix p(d, d);
  // m + s = twice_s - i is an integer; the sign is (-1)^{2s - i}.
  for (std::size_t i = 0; i < d; ++i) p(i, i) = ((s.twice() - static_cast<int>(i)) % 2 == 0) ? 1.0 : -1.0;
  return ParityOperator{std::move(p)};
}

ParityOperator composite_parity(std::span<const Spin> sites) {
  if (sites.empty()) throw DomainError("composite_parity: no sites");
  ComplexMatrix p = parity_z(sites.front()).matrix;
  for (std::size_t i = 1; i < sites.size(); ++i) p = kron(p, parity_z(sites[i]).matrix);
  return ParityOperator{std::move(p)};
}

StateVector coherent_state(Spin s, double theta) {
  const ComplexMatrix u = rotation(s, Vec3{0.0, 1.0, 0.0}, theta);
  return u.column(0);
}

}  // namespace qd
