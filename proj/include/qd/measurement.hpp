#pragma once

// Qutrit (spin-1) projective measurements.
//
// A complete projective measurement on a spin-1 system is fixed by six
// angles. Three "intrinsic" angles (alpha, beta, gamma) select the shape of
// the spin diagram (the three vectors <m|S|m>), and an Euler rotation
// exp(-i psi Sz) exp(-i theta_r Sy) exp(-i phi_r Sz) orients it:
//
//   |1_r>  = cos(beta) v - sin(beta) e^{-i gamma}|0>
//   |0_r>  = sin(beta) v + cos(beta) e^{-i gamma}|0>
//   |-1_r> = -e^{-i phi0} sin(alpha)|1> + e^{i phi0} cos(alpha)|-1>
//
// with v = e^{-i phi0} cos(alpha)|1> + e^{i phi0} sin(alpha)|-1> and
// tan(phi0) = tan(gamma) tan(pi/4 - alpha), which keeps the intrinsic diagram
// in the x-z plane.
//
// Families: beta = gamma = 0 gives the collinear, definite-parity states
// (type II); beta = pi/4 gives the Y-shaped parity-swapping bases (type III);
// alpha = beta = gamma = 0 rotated anywhere is an ordinary spin measurement
// (type I).

#include <array>
#include <string_view>

#include "qd/matrix.hpp"
#include "qd/spin.hpp"

namespace qd {

struct MeasurementParams {
  double alpha = 0.0;    ///< [0, π/4]
  double beta = 0.0;     ///< [0, π/4]
  double gamma = 0.0;    ///< (−π/2, π/2]
  double psi = 0.0;      ///< outer z rotation
  double theta_r = 0.0;  ///< y rotation
  double phi_r = 0.0;    ///< inner z rotation

  bool operator==(const MeasurementParams&) const = default;
};

/// Throws DomainError if alpha, beta or gamma lie outside their ranges.
void validate(const MeasurementParams& p);

/// Phase angle keeping ⟨S_y⟩ = 0 in the intrinsic frame. Agrees with
/// atan(tan γ · tan(π/4 − α)) on γ ∈ (−π/2, π/2) and is continuous in γ.
double intrinsic_phase(double alpha, double gamma);

/// Three orthonormal qutrit states, stored as the columns of a unitary.
class MeasurementBasis {
 public:
  /// Throws DimensionError unless `u` is 3x3; orthonormality is the caller's
  /// contract (checked by tests, not here).
  explicit MeasurementBasis(ComplexMatrix u);

  const ComplexMatrix& unitary() const noexcept { return u_; }
  StateVector state(std::size_t m) const { return u_.column(m); }
  ComplexMatrix projector(std::size_t m) const;
  std::array<ComplexMatrix, 3> projectors() const;

 private:
  ComplexMatrix u_;
};

struct SpinDiagram {
  std::array<Vec3, 3> vectors{};
  double total_length_sq = 0.0;  ///< L_S² = Σ_m |⟨S⟩_m|²
};

enum class MeasurementLabel { spin, collinear, y_type, general };

std::string_view label_name(MeasurementLabel l) noexcept;  // "I", "II", "III", "IV"

struct MeasurementType {
  MeasurementLabel label = MeasurementLabel::general;
  bool parity_preserving = false;
  bool zero_diagram = false;  ///< every ⟨S⟩_m vanishes (labelled collinear)
};

/// Euler rotation exp(-iψS_z) exp(-iθS_y) exp(-iφS_z) for spin 1 in closed form.
ComplexMatrix euler_rotation(double psi, double theta, double phi);

/// Columns |1_r⟩, |0_r⟩, |−1_r⟩ of the intrinsic basis.
ComplexMatrix intrinsic_unitary(double alpha, double beta, double gamma);
/// Intrinsic basis followed by the orientation rotation.
ComplexMatrix measurement_unitary(const MeasurementParams& p);

MeasurementBasis intrinsic_basis(double alpha, double beta, double gamma);
MeasurementBasis full_basis(const MeasurementParams& p);
/// e^{-iφS_z}|m_α⟩: definite S_z parity (+1, −1, +1).
MeasurementBasis type_II_basis(double alpha, double phi);
/// e^{-iφS_z} applied to the β = π/4 intrinsic basis; P_z swaps the first
/// two states and fixes the third.
MeasurementBasis type_III_basis(double alpha, double gamma, double phi);

SpinDiagram spin_diagram(const MeasurementBasis& b);

/// Labels the basis by its spin diagram (most specific class wins) and tests
/// invariance of the projector set under the π rotation about `parity_axis`.
MeasurementType classify(const MeasurementBasis& b, double tol = 1e-8,
                         const Vec3& parity_axis = Vec3{0.0, 0.0, 1.0});

}  // namespace qd
