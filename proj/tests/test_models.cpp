#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qd/error.hpp"
#include "qd/measures.hpp"
#include "qd/models.hpp"

using namespace qd;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix projector(const StateVector& v) { return outer(v, v); }

}  // namespace

TEST_CASE("aligned mixture") {
  for (double theta : {0.0, 0.4, kPi / 2}) {
    const StateVector up = coherent_state(kSpinOne, theta);
    const StateVector down = coherent_state(kSpinOne, -theta);
    const ComplexMatrix expected = (projector(kron(up, up)) + projector(kron(down, down))) * cplx(0.5);
    const AlignedMixtureState s = aligned_mixture(theta);
    CHECK(frobenius_distance(s.rho.matrix(), expected) < 1e-14);
    CHECK(s.rho.dims() == BipartiteDims{3, 3});
  }
  CHECK_THROWS_AS(aligned_mixture(-0.1), DomainError);
  CHECK_THROWS_AS(aligned_mixture(2.0), DomainError);
}

TEST_CASE("fixed-parity states") {
  const std::size_t n = 3;
  const std::vector<Spin> sites(n, kSpinOne);
  const ComplexMatrix p = composite_parity(sites).matrix;
  for (int sign : {1, -1}) {
    const StateVector psi = fixed_parity_state(n, 0.7, sign);
    CHECK(norm(psi) == doctest::Approx(1.0));
    CHECK(inner(psi, p * psi).real() == doctest::Approx(sign));
  }
  // |Ψ₋⟩ vanishes at θ = 0.
  CHECK_THROWS_AS(fixed_parity_state(n, 0.0, -1), DomainError);
  CHECK_THROWS_AS(fixed_parity_state(1, 0.3, 1), DomainError);
}

TEST_CASE("pair reduction") {
  const StateVector a = coherent_state(kSpinOne, 0.3);
  const StateVector b = coherent_state(kSpinOne, 1.0);
  const StateVector c = coherent_state(kSpinOne, -0.8);
  const StateVector psi = kron(kron(a, b), c);
  const DensityMatrix ac = reduce_pair(psi, 3, 0, 2);
  CHECK(frobenius_distance(ac.matrix(), kron(projector(a), projector(c))) < 1e-14);
  CHECK_THROWS_AS(reduce_pair(psi, 3, 2, 1), DomainError);
  // Large θ: the fixed-parity pair approaches the aligned mixture.
  const double theta = 0.45 * kPi;
  const DensityMatrix pair = reduce_pair(fixed_parity_state(4, theta, 1), 4, 0, 1);
  const double c4 = std::pow(std::cos(theta), 4);
  CHECK(frobenius_distance(pair.matrix(), aligned_mixture(theta).rho.matrix()) < 2 * c4);
}

TEST_CASE("XYZ Hamiltonian") {
  SUBCASE("free spins in a field") {
    const XYZChainSpec spec = XYZChainSpec::uniform(2, 1.0, 0.0, 0.0, 0.0);
    const GroundState gs = ground_state(xyz_hamiltonian(spec));
    CHECK(gs.energy == doctest::Approx(-2.0));
    CHECK(gs.gap == doctest::Approx(1.0));
    CHECK(std::abs(gs.state[8]) == doctest::Approx(1.0));
  }
  SUBCASE("two-site Ising coupling") {
    // −J S_z S_z with J = 1: |1,1⟩ and |−1,−1⟩ at −1.
    const XYZChainSpec spec = XYZChainSpec::uniform(2, 0.0, 0.0, 0.0, 1.0);
    const GroundState gs = ground_state(xyz_hamiltonian(spec));
    CHECK(gs.energy == doctest::Approx(-1.0));
    CHECK(gs.degenerate);
  }
  SUBCASE("parity symmetry and hermiticity") {
    XYZChainSpec spec = XYZChainSpec::uniform(3, 0.4, 1.0, 0.5, -0.3);
    spec.jxy.push_back({0, 1, 0.2});
    const ComplexMatrix h = xyz_hamiltonian(spec);
    CHECK(hermiticity_defect(h) < 1e-14);
    const std::vector<Spin> sites(3, kSpinOne);
    CHECK(frobenius_norm(commutator(h, composite_parity(sites).matrix)) < 1e-12);
  }
  SUBCASE("limits") {
    CHECK_THROWS_AS(xyz_hamiltonian(XYZChainSpec::uniform(7, 1.0, 1.0, 1.0, 1.0)), DimensionError);
    XYZChainSpec bad = XYZChainSpec::uniform(2, 1.0, 1.0, 1.0, 1.0);
    bad.jx.push_back({0, 5, 1.0});
    CHECK_THROWS_AS(xyz_hamiltonian(bad), DomainError);
    bad = XYZChainSpec::uniform(2, 1.0, 1.0, 1.0, 1.0);
    bad.b.pop_back();
    CHECK_THROWS_AS(xyz_hamiltonian(bad), DomainError);
  }
  CHECK(anisotropy(2.0, 1.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("thermal states") {
  const ComplexMatrix h = xyz_hamiltonian(XYZChainSpec::uniform(2, 1.0, 0.3, 0.2, 0.1));
  const DensityMatrix hot = thermal_state(h, 0.0, {3, 3});
  CHECK(frobenius_distance(hot.matrix(), ComplexMatrix::identity(9) * cplx(1.0 / 9)) < 1e-14);
  const DensityMatrix cold = thermal_state(h, 200.0, {3, 3});
  const GroundState gs = ground_state(h);
  CHECK(frobenius_distance(cold.matrix(), projector(gs.state)) < 1e-10);
}

TEST_CASE("closed forms") {
  CHECK(closed::d_closed(0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(std::abs(closed::i2_closed(0.0)) < 1e-15);
  CHECK(std::abs(closed::i2_closed(kPi / 2)) < 1e-15);
  CHECK(std::cos(closed::theta_c()) == doctest::Approx(std::pow(3.0, -0.25)));
  CHECK(closed::i2_closed(closed::theta_c()) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
  // ⟨−θ|θ⟩² = 1/3 at θ_c.
  const double ov = std::pow(std::cos(closed::theta_c()), 4);
  CHECK(ov == doctest::Approx(1.0 / 3.0));
  CHECK(std::tan(closed::alpha_star(0.9)) == doctest::Approx(std::pow(std::tan(0.45), 2)));
  CHECK(closed::h_nu(1.0, 0.5) == doctest::Approx(1.0));
  CHECK(closed::d_closed(1e-3) / closed::d_asymptote_small(1e-3) == doctest::Approx(1.0).epsilon(1e-2));
  const double near = kPi / 2 - 1e-2;
  CHECK(closed::d_closed(near) / closed::d_asymptote_large(near) == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(closed::i2_closed(near) / (0.5 * 1e-8) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("Bell anchor state") {
  const DensityMatrix bell = bell_anchor();
  CHECK(bell.matrix()(0, 8).real() == doctest::Approx(0.5));
  CHECK(vn_entropy(partial_trace(bell, Subsystem::B)) == doctest::Approx(1.0));
}
