#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qd/matrix.hpp"

namespace qd {

using Vec3 = std::array<double, 3>;

/// Spin quantum number stored as 2s (a positive integer).
class Spin {
 public:
  /// Throws DomainError unless 2s is a positive integer.
  static Spin from_value(double s);
  static constexpr Spin from_twice(int twice_s) { return Spin(twice_s); }

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return 0.5 * twice_; }
  constexpr std::size_t dim() const noexcept { return static_cast<std::size_t>(twice_) + 1; }
  /// m value of standard-basis index i (descending: s, s-1, ..., -s).
  constexpr double m(std::size_t i) const noexcept { return value() - static_cast<double>(i); }

  constexpr bool operator==(const Spin&) const = default;

 private:
  constexpr explicit Spin(int twice) : twice_(twice) {}
  int twice_;
};

inline constexpr Spin kSpinHalf = Spin::from_twice(1);
inline constexpr Spin kSpinOne = Spin::from_twice(2);

/// Dimensionless spin components in the |s⟩, |s-1⟩, ..., |-s⟩ basis.
struct SpinTriple {
  Spin s;
  ComplexMatrix x, y, z;

  const ComplexMatrix& operator[](std::size_t mu) const { return mu == 0 ? x : (mu == 1 ? y : z); }
  /// axis · S
  ComplexMatrix along(const Vec3& axis) const;
};

/// Diagonal ±1 operator.
struct ParityOperator {
  ComplexMatrix matrix;
};

SpinTriple spin_operators(Spin s);

/// exp(-i·angle·(axis·S)), evaluated spectrally. Throws DomainError when
/// |axis| deviates from 1 by more than 1e-10.
ComplexMatrix rotation(Spin s, const Vec3& axis, double angle);

/// e^{iπ(S_z + s)}: +1 on m = s, alternating down the ladder.
ParityOperator parity_z(Spin s);

/// ⊗_i e^{iπ(S_z^i − s_i)} over the listed sites (slow index first).
ParityOperator composite_parity(std::span<const Spin> sites);

/// e^{-iθ S_y}|s⟩: maximal spin along (sin θ, 0, cos θ).
StateVector coherent_state(Spin s, double theta);

}  // namespace qd
