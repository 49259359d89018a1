#include "qd/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qd/error.hpp"

namespace qd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRangeSlack = 1e-12;

cplx expi(double x) { return std::polar(1.0, x); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double length(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

// Permutation induced by conjugating the projector set with `q`, if the set is
// invariant: perm[m] = m' with Q|m⟩ ∝ |m'⟩.
std::optional<std::array<int, 3>> induced_permutation(const ComplexMatrix& u, const ComplexMatrix& q,
                                                      double tol) {
  const ComplexMatrix image = q * u;
  std::array<int, 3> perm{-1, -1, -1};
  std::array<bool, 3> taken{false, false, false};
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t mp = 0; mp < 3; ++mp) {
      if (taken[mp]) continue;
      cplx overlap{};
      for (std::size_t i = 0; i < 3; ++i) overlap += std::conj(u(i, mp)) * image(i, m);
      if (1.0 - std::norm(overlap) < tol) {
        perm[m] = static_cast<int>(mp);
        taken[mp] = true;
        break;
      }
    }
    if (perm[m] < 0) return std::nullopt;
  }
  return perm;
}

int fixed_points(const std::array<int, 3>& perm) {
  int n = 0;
  for (int m = 0; m < 3; ++m) n += perm[m] == m ? 1 : 0;
  return n;
}

}  // namespace

void validate(const MeasurementParams& p) {
  auto check = [](double v, double lo, double hi, bool lo_open, const char* name) {
    const bool below = lo_open ? v <= lo - kRangeSlack : v < lo - kRangeSlack;
    if (below || v > hi + kRangeSlack || !std::isfinite(v)) {
      throw DomainError(std::string("measurement parameter ") + name + " = " + std::to_string(v) +
                        " outside its range");
    }
  };
  check(p.alpha, 0.0, kPi / 4, false, "alpha");
  check(p.beta, 0.0, kPi / 4, false, "beta");
  check(p.gamma, -kPi / 2, kPi / 2, true, "gamma");
  for (double a : {p.psi, p.theta_r, p.phi_r}) {
    if (!std::isfinite(a)) throw DomainError("measurement orientation angle is not finite");
  }
}

double intrinsic_phase(double alpha, double gamma) {
  return std::atan2(std::tan(kPi / 4 - alpha) * std::sin(gamma), std::cos(gamma));
}

MeasurementBasis::MeasurementBasis(ComplexMatrix u) : u_(std::move(u)) {
  if (u_.rows() != 3 || u_.cols() != 3) throw DimensionError("MeasurementBasis: expected 3x3");
}

ComplexMatrix MeasurementBasis::projector(std::size_t m) const {
  const StateVector v = state(m);
  return outer(v, v);
}

std::array<ComplexMatrix, 3> MeasurementBasis::projectors() const {
  return {projector(0), projector(1), projector(2)};
}

std::string_view label_name(MeasurementLabel l) noexcept {
  switch (l) {
    case MeasurementLabel::spin:
      return "I";
    case MeasurementLabel::collinear:
      return "II";
    case MeasurementLabel::y_type:
      return "III";
    case MeasurementLabel::general:
      return "IV";
  }
  return "?";
}

ComplexMatrix euler_rotation(double psi, double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double r = s / std::numbers::sqrt2;
  // Wigner d^1(θ), rows/cols ordered m = 1, 0, −1.
  const double d[3][3] = {{0.5 * (1 + c), -r, 0.5 * (1 - c)},
                          {r, c, -r},
                          {0.5 * (1 - c), r, 0.5 * (1 + c)}};
  ComplexMatrix u(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double mi = 1 - i, mj = 1 - j;
      u(i, j) = expi(-psi * mi - phi * mj) * d[i][j];
    }
  return u;
}

ComplexMatrix intrinsic_unitary(double alpha, double beta, double gamma) {
  const double p0 = intrinsic_phase(alpha, gamma);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const cplx v1 = expi(-p0) * ca, vm1 = expi(p0) * sa;
  const cplx z0 = expi(-gamma);
  return ComplexMatrix{{cb * v1, sb * v1, -expi(-p0) * sa},
                       {-sb * z0, cb * z0, 0.0},
                       {cb * vm1, sb * vm1, expi(p0) * ca}};
}

ComplexMatrix measurement_unitary(const MeasurementParams& p) {
  return euler_rotation(p.psi, p.theta_r, p.phi_r) * intrinsic_unitary(p.alpha, p.beta, p.gamma);
}

MeasurementBasis intrinsic_basis(double alpha, double beta, double gamma) {
  return MeasurementBasis(intrinsic_unitary(alpha, beta, gamma));
}

MeasurementBasis full_basis(const MeasurementParams& p) {
  return MeasurementBasis(measurement_unitary(p));
}

MeasurementBasis type_II_basis(double alpha, double phi) {
  return full_basis(MeasurementParams{alpha, 0.0, 0.0, phi, 0.0, 0.0});
}

MeasurementBasis type_III_basis(double alpha, double gamma, double phi) {
  return full_basis(MeasurementParams{alpha, kPi / 4, gamma, phi, 0.0, 0.0});
}

SpinDiagram spin_diagram(const MeasurementBasis& b) {
  static const SpinTriple ops = spin_operators(kSpinOne);
  SpinDiagram d;
  for (std::size_t m = 0; m < 3; ++m) {
    const StateVector v = b.state(m);
    for (std::size_t mu = 0; mu < 3; ++mu) d.vectors[m][mu] = expectation(ops[mu], v).real();
    d.total_length_sq += dot(d.vectors[m], d.vectors[m]);
  }
  return d;
}

MeasurementType classify(const MeasurementBasis& b, double tol, const Vec3& parity_axis) {
  const SpinDiagram diagram = spin_diagram(b);
  const auto& v = diagram.vectors;
  MeasurementType out;

  const double axis_len = length(parity_axis);
  if (axis_len == 0.0) throw DomainError("classify: zero parity axis");
  const ComplexMatrix parity_rotation = rotation(kSpinOne, scaled(parity_axis, 1.0 / axis_len), kPi);
  out.parity_preserving = induced_permutation(b.unitary(), parity_rotation, tol).has_value();

  std::array<double, 3> len{};
  for (std::size_t m = 0; m < 3; ++m) len[m] = length(v[m]);
  const double longest = *std::max_element(len.begin(), len.end());

  if (longest < tol) {
    out.label = MeasurementLabel::collinear;
    out.zero_diagram = true;
    return out;
  }

  bool collinear = true;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) collinear = collinear && length(cross(v[i], v[j])) < tol;
  if (collinear) {
    out.label = longest >= 1.0 - tol ? MeasurementLabel::spin : MeasurementLabel::collinear;
    return out;
  }

  // Candidate symmetry axes of a Y-shaped diagram: the directions of the
  // vectors themselves, the plane normal and in-plane perpendiculars.
  std::vector<Vec3> axes;
  Vec3 normal{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const Vec3 n = cross(v[i], v[j]);
      if (length(n) > length(normal)) normal = n;
    }
  normal = scaled(normal, 1.0 / length(normal));
  axes.push_back(normal);
  for (std::size_t m = 0; m < 3; ++m) {
    if (len[m] < tol) continue;
    const Vec3 u = scaled(v[m], 1.0 / len[m]);
    axes.push_back(u);
    axes.push_back(cross(normal, u));
  }
  for (const Vec3& axis : axes) {
    const auto perm = induced_permutation(b.unitary(), rotation(kSpinOne, axis, kPi), tol);
    if (perm && fixed_points(*perm) == 1) {
      out.label = MeasurementLabel::y_type;
      return out;
    }
  }
  out.label = MeasurementLabel::general;
  return out;
}

}  // namespace qd
