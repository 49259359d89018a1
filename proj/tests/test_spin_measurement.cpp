#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qd/error.hpp"
#include "qd/measurement.hpp"
#include "qd/random.hpp"
#include "qd/spin.hpp"

using namespace qd;

namespace {

constexpr double kPi = std::numbers::pi;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

TEST_CASE("spin algebra") {
  for (int twice = 1; twice <= 4; ++twice) {
    const Spin s = Spin::from_twice(twice);
    const SpinTriple ops = spin_operators(s);
    const ComplexMatrix i = ComplexMatrix::identity(s.dim());
    CHECK(frobenius_distance(commutator(ops.x, ops.y), cplx(0, 1) * ops.z) < 1e-12);
    CHECK(frobenius_distance(commutator(ops.y, ops.z), cplx(0, 1) * ops.x) < 1e-12);
    CHECK(frobenius_distance(commutator(ops.z, ops.x), cplx(0, 1) * ops.y) < 1e-12);
    const ComplexMatrix casimir = ops.x * ops.x + ops.y * ops.y + ops.z * ops.z;
    CHECK(frobenius_distance(casimir, i * cplx(s.value() * (s.value() + 1))) < 1e-12);
  }
  CHECK_THROWS_AS(Spin::from_value(0.3), DomainError);
  CHECK_THROWS_AS(rotation(kSpinOne, Vec3{1.0, 1.0, 0.0}, 0.1), DomainError);
}

TEST_CASE("parity operators") {
  const ParityOperator p = parity_z(kSpinOne);
  CHECK(p.matrix(0, 0).real() == doctest::Approx(1.0));
  CHECK(p.matrix(1, 1).real() == doctest::Approx(-1.0));
  CHECK(p.matrix(2, 2).real() == doctest::Approx(1.0));
  const std::array<Spin, 2> two{kSpinOne, kSpinOne};
  const ParityOperator pp = composite_parity(two);
  CHECK(frobenius_distance(pp.matrix, kron(p.matrix, p.matrix)) < 1e-15);
  // π rotation about z equals parity up to the global phase −1.
  const ComplexMatrix rz = rotation(kSpinOne, Vec3{0.0, 0.0, 1.0}, kPi);
  CHECK(frobenius_distance(rz, p.matrix * cplx(-1.0)) < 1e-12);
}

TEST_CASE("coherent states point along (sin θ, 0, cos θ)") {
  const SpinTriple ops = spin_operators(kSpinOne);
  for (double theta : {0.0, 0.3, 1.1, kPi / 2}) {
    const StateVector v = coherent_state(kSpinOne, theta);
    CHECK(expectation(ops.x, v).real() == doctest::Approx(std::sin(theta)));
    CHECK(std::abs(expectation(ops.y, v)) < 1e-14);
    CHECK(expectation(ops.z, v).real() == doctest::Approx(std::cos(theta)));
  }
  // ⟨−θ|θ⟩ = cos²θ for spin 1.
  const double t = 0.7;
  CHECK(inner(coherent_state(kSpinOne, -t), coherent_state(kSpinOne, t)).real() ==
        doctest::Approx(std::cos(t) * std::cos(t)));
}

TEST_CASE("intrinsic phase") {
  for (double a : {0.0, 0.2, 0.6}) {
    for (double g : {-1.2, -0.3, 0.0, 0.9}) {
      CHECK(intrinsic_phase(a, g) == doctest::Approx(std::atan(std::tan(g) * std::tan(kPi / 4 - a))));
    }
  }
  CHECK(intrinsic_phase(0.1, kPi / 2) == doctest::Approx(kPi / 2));
}

TEST_CASE("bases are orthonormal and Euler rotations factor") {
  sample::Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const MeasurementParams p = sample::general_params(rng);
    const ComplexMatrix u = measurement_unitary(p);
    CHECK(frobenius_distance(u.adjoint() * u, ComplexMatrix::identity(3)) < 1e-13);
    const ComplexMatrix expected = rotation(kSpinOne, {0, 0, 1}, p.psi) *
                                   rotation(kSpinOne, {0, 1, 0}, p.theta_r) *
                                   rotation(kSpinOne, {0, 0, 1}, p.phi_r);
    CHECK(frobenius_distance(euler_rotation(p.psi, p.theta_r, p.phi_r), expected) < 1e-12);
  }
  CHECK_THROWS_AS(validate(MeasurementParams{.alpha = 1.0}), DomainError);
  CHECK_THROWS_AS(validate(MeasurementParams{.beta = -0.1}), DomainError);
  CHECK_THROWS_AS(MeasurementBasis(ComplexMatrix::identity(2)), DimensionError);
}

TEST_CASE("spin diagram geometry") {
  SUBCASE("type II: two opposite vectors of length cos 2α") {
    for (double a : {0.0, 0.3, 0.7}) {
      const SpinDiagram d = spin_diagram(intrinsic_basis(a, 0.0, 0.0));
      CHECK(d.total_length_sq == doctest::Approx(2 * std::cos(2 * a) * std::cos(2 * a)));
      CHECK(d.vectors[0][2] == doctest::Approx(std::cos(2 * a)));
      CHECK(d.vectors[2][2] == doctest::Approx(-std::cos(2 * a)));
    }
  }
  SUBCASE("symmetric Y reaches 8/3") {
    const SpinDiagram d = spin_diagram(intrinsic_basis(0.5 * std::asin(1.0 / 3.0), kPi / 4, 0.0));
    CHECK(d.total_length_sq == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    // Equal lengths at 120°.
    for (int m = 0; m < 3; ++m) CHECK(dot(d.vectors[m], d.vectors[m]) == doctest::Approx(8.0 / 9.0));
    CHECK(dot(d.vectors[0], d.vectors[1]) == doctest::Approx(-4.0 / 9.0));
  }
  SUBCASE("random bases") {
    sample::Rng rng(17);
    for (int k = 0; k < 500; ++k) {
      const SpinDiagram d = spin_diagram(full_basis(sample::general_params(rng)));
      Vec3 sum{};
      for (const Vec3& v : d.vectors)
        for (int mu = 0; mu < 3; ++mu) sum[mu] += v[mu];
      CHECK(std::sqrt(dot(sum, sum)) < 1e-12);
      CHECK(dot(d.vectors[0], d.vectors[1]) <= 1e-12);
      CHECK(dot(d.vectors[1], d.vectors[2]) <= 1e-12);
      CHECK(d.total_length_sq <= 8.0 / 3.0 + 1e-9);
    }
  }
}

TEST_CASE("classification") {
  CHECK(classify(intrinsic_basis(0.0, 0.0, 0.0)).label == MeasurementLabel::spin);
  CHECK(classify(full_basis({0.0, 0.0, 0.0, 0.4, 1.0, -0.2})).label == MeasurementLabel::spin);
  const MeasurementType ii = classify(type_II_basis(0.3, 0.5));
  CHECK(ii.label == MeasurementLabel::collinear);
  CHECK(ii.parity_preserving);
  const MeasurementType zero = classify(intrinsic_basis(kPi / 4, 0.0, 0.0));
  CHECK(zero.zero_diagram);
  CHECK(zero.label == MeasurementLabel::collinear);
  const MeasurementType iii = classify(type_III_basis(0.2, 0.4, 1.0));
  CHECK(iii.label == MeasurementLabel::y_type);
  CHECK(iii.parity_preserving);
  const MeasurementType gen = classify(intrinsic_basis(0.2, 0.4, 0.0));
  CHECK(gen.label == MeasurementLabel::general);
  CHECK_FALSE(gen.parity_preserving);
  // Tilting a type II basis off the z axis breaks z parity.
  CHECK_FALSE(classify(full_basis({0.3, 0.0, 0.0, 0.0, 0.5, 0.0})).parity_preserving);
  CHECK(label_name(MeasurementLabel::y_type) == "III");
}

TEST_CASE("parity action on type II and III states") {
  const ComplexMatrix p = parity_z(kSpinOne).matrix;
  const MeasurementBasis ii = type_II_basis(0.3, 0.9);
  const double signs[3] = {1.0, -1.0, 1.0};
  for (std::size_t m = 0; m < 3; ++m) {
    const StateVector v = ii.state(m);
    CHECK(inner(v, p * v).real() == doctest::Approx(signs[m]));
  }
  const MeasurementBasis iii = type_III_basis(0.2, -0.5, 0.7);
  CHECK(std::abs(inner(iii.state(1), p * iii.state(0))) == doctest::Approx(1.0));
  CHECK(std::abs(inner(iii.state(2), p * iii.state(2))) == doctest::Approx(1.0));
}
