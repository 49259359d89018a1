#include "qd/random.hpp"

#include <cmath>
#include <numbers>

namespace qd::sample {

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

StateVector gaussian_vector(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g;
  StateVector v(n);
  for (auto& z : v) z = cplx(g(rng), g(rng));
  return v;
}

ComplexMatrix hermitian(Rng& rng, std::size_t n) {
  ComplexMatrix m(n, n);
  std::normal_distribution<double> g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return (m + m.adjoint()) * 0.5;
}

ComplexMatrix unitary(Rng& rng, std::size_t n) {
  ComplexMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    StateVector v = gaussian_vector(rng, n);
    for (std::size_t k = 0; k < j; ++k) {
      const StateVector e = u.column(k);
      const cplx c = inner(e, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * e[i];
    }
    const double nv = norm(v);
    for (auto& z : v) z /= nv;
    u.set_column(j, v);
  }
  return u;
}

DensityMatrix density(Rng& rng, BipartiteDims dims, std::size_t rank) {
  const std::size_t d = dims.total();
  ComplexMatrix g(d, rank);
  std::normal_distribution<double> n;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < rank; ++k) g(i, k) = cplx(n(rng), n(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / trace(rho).real();
  return DensityMatrix((rho + rho.adjoint()) * 0.5, dims);
}

MeasurementParams general_params(Rng& rng) {
  return MeasurementParams{uniform(rng, 0, kPi / 4),     uniform(rng, 0, kPi / 4),
                           uniform(rng, -kPi / 2, kPi / 2), uniform(rng, 0, 2 * kPi),
                           std::acos(uniform(rng, -1, 1)), uniform(rng, 0, 2 * kPi)};
}

MeasurementParams type_ii_params(Rng& rng) {
  return MeasurementParams{uniform(rng, 0, kPi / 4), 0.0, 0.0, uniform(rng, 0, kPi), 0.0, 0.0};
}

MeasurementParams type_iii_params(Rng& rng) {
  return MeasurementParams{uniform(rng, 0, kPi / 4), kPi / 4, uniform(rng, -kPi / 2, kPi / 2),
                           uniform(rng, 0, kPi), 0.0, 0.0};
}

}  // namespace qd::sample
