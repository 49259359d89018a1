#include "qd/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qd/eig.hpp"
#include "qd/error.hpp"

namespace qd {

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta, const char* where) {
  if (!(theta >= 0.0 && theta <= kPi / 2)) {
    throw DomainError(std::string(where) + ": theta outside [0, pi/2]");
  }
}

StateVector product_power(const StateVector& v, std::size_t n) {
  StateVector out = v;
  for (std::size_t k = 1; k < n; ++k) out = kron(out, v);
  return out;
}

// Operator `op` acting on `site` of an n-site chain.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, std::size_t n) {
  const std::size_t d = op.rows();
  ComplexMatrix out = site == 0 ? op : ComplexMatrix::identity(d);
  for (std::size_t k = 1; k < n; ++k) out = kron(out, k == site ? op : ComplexMatrix::identity(d));
  return out;
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

AlignedMixtureState aligned_mixture(double theta) {
  check_theta(theta, "aligned_mixture");
  const StateVector up = product_power(coherent_state(kSpinOne, theta), 2);
  const StateVector down = product_power(coherent_state(kSpinOne, -theta), 2);
  ComplexMatrix m = outer(up, up) + outer(down, down);
  m *= 0.5;
  return {theta, DensityMatrix(std::move(m), BipartiteDims{3, 3})};
}

StateVector fixed_parity_state(std::size_t n, double theta, int sign) {
  if (n < 2) throw DomainError("fixed_parity_state: need at least two sites");
  check_theta(theta, "fixed_parity_state");
  if (sign != 1 && sign != -1) throw DomainError("fixed_parity_state: sign must be +1 or -1");
  StateVector psi = product_power(coherent_state(kSpinOne, theta), n);
  const StateVector other = product_power(coherent_state(kSpinOne, -theta), n);
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] += static_cast<double>(sign) * other[k];
  const double nrm = norm(psi);
  if (nrm < 1e-8) throw DomainError("fixed_parity_state: branches cancel, state not normalizable");
  for (auto& c : psi) c /= nrm;
  return psi;
}

DensityMatrix reduce_pair(std::span<const cplx> psi, std::size_t n, std::size_t i, std::size_t j,
                          std::size_t local_dim) {
  if (!(i < j && j < n)) throw DomainError("reduce_pair: need 0 <= i < j < n");
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= local_dim;
  if (psi.size() != total) throw DimensionError("reduce_pair: state size does not match n sites");

  const std::size_t d = local_dim;
  const std::size_t rest = total / (d * d);
  // psi regrouped as M[rest, pair].
  ComplexMatrix m(rest, d * d);
  std::vector<std::size_t> digit(n);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t x = k;
    for (std::size_t s = n; s-- > 0;) {
      digit[s] = x % d;
      x /= d;
    }
    std::size_t r = 0;
    for (std::size_t s = 0; s < n; ++s)
      if (s != i && s != j) r = r * d + digit[s];
    m(r, digit[i] * d + digit[j]) = psi[k];
  }
  ComplexMatrix rho = m.transpose() * m.conj();
  return DensityMatrix(std::move(rho), BipartiteDims{d, d});
}

XYZChainSpec XYZChainSpec::uniform(std::size_t n, double field, double jx, double jy, double jz) {
  XYZChainSpec spec;
  spec.n = n;
  spec.b.assign(n, field);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    spec.jx.push_back({k, k + 1, jx});
    spec.jy.push_back({k, k + 1, jy});
    spec.jz.push_back({k, k + 1, jz});
  }
  return spec;
}

double anisotropy(double jx, double jy, double jz) {
  if (jx == jz) throw DomainError("anisotropy: J^x equals J^z");
  return (jy - jz) / (jx - jz);
}

ComplexMatrix xyz_hamiltonian(const XYZChainSpec& spec, std::size_t max_dim) {
  if (spec.n == 0) throw DomainError("xyz_hamiltonian: empty chain");
  if (spec.b.size() != spec.n) throw DomainError("xyz_hamiltonian: need one field per site");
  const std::size_t d = spec.s.dim();
  std::size_t total = 1;
  for (std::size_t k = 0; k < spec.n; ++k) {
    total *= d;
    if (total > max_dim) {
      throw DimensionError("xyz_hamiltonian: Hilbert space exceeds " + std::to_string(max_dim));
    }
  }

  const SpinTriple ops = spin_operators(spec.s);
  std::vector<std::array<ComplexMatrix, 3>> site(spec.n);
  for (std::size_t k = 0; k < spec.n; ++k)
    for (std::size_t mu = 0; mu < 3; ++mu) site[k][mu] = embed(ops[mu], k, spec.n);

  ComplexMatrix h(total, total);
  for (std::size_t k = 0; k < spec.n; ++k)
    if (spec.b[k] != 0.0) h += spec.b[k] * site[k][2];

  auto add = [&](const std::vector<Coupling>& list, std::size_t mu, std::size_t nu) {
    for (const Coupling& c : list) {
      if (c.i >= spec.n || c.j >= spec.n || c.i == c.j) {
        throw DomainError("xyz_hamiltonian: bad coupling sites");
      }
      if (c.value != 0.0) h -= c.value * (site[c.i][mu] * site[c.j][nu]);
    }
  };
  add(spec.jx, 0, 0);
  add(spec.jy, 1, 1);
  add(spec.jz, 2, 2);
  add(spec.jxy, 0, 1);
  return h;
}

GroundState ground_state(const ComplexMatrix& h) {
  const HermitianEig eig = hermitian_eig(h);
  GroundState g;
  g.energy = eig.eigenvalues.front();
  g.state = eig.eigenvectors.column(0);
  g.gap = eig.eigenvalues.size() > 1 ? eig.eigenvalues[1] - eig.eigenvalues[0] : 0.0;
  g.degenerate = eig.eigenvalues.size() > 1 && g.gap < 1e-10;
  return g;
}

DensityMatrix thermal_state(const ComplexMatrix& h, double beta, BipartiteDims dims) {
  if (!(beta >= 0.0)) throw DomainError("thermal_state: beta must be non-negative");
  const HermitianEig eig = hermitian_eig(h);
  const double e0 = eig.eigenvalues.front();
  double z = 0.0;
  for (double e : eig.eigenvalues) z += std::exp(-beta * (e - e0));
  ComplexMatrix rho = matrix_func(eig, [&](double e) { return std::exp(-beta * (e - e0)) / z; });
  return DensityMatrix(std::move(rho), dims);
}

DensityMatrix bell_anchor() {
  StateVector psi(9);
  psi[0] = psi[8] = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::pure(psi, BipartiteDims{3, 3});
}

namespace closed {

double h_nu(double nu, double x) { return -xlog2x(x) - xlog2x(nu - x); }

double p_theta(double theta) {
  const double inner = 115.0 / 8 - std::cos(2 * theta) + 1.5 * std::cos(4 * theta) +
                       std::cos(6 * theta) + std::cos(8 * theta) / 8;
  return 0.25 - std::sqrt(std::max(inner, 0.0)) / 16;
}

double q_theta(double theta) {
  const double s = std::sin(theta);
  return 0.5 * s * s;
}

double theta_c() { return std::acos(std::pow(3.0, -0.25)); }

double d_closed(double theta) {
  const double p = p_theta(theta), q = q_theta(theta);
  return 2 * h_nu(0.5, p) - 1 - h_nu(1.0, 2 * q * (1 - q)) + h_nu(1.0, q);
}

double i2_closed(double theta) {
  const double c2 = std::cos(2 * theta);
  if (theta <= theta_c()) {
    const double s = std::sin(theta);
    return s * s * s * s * (3 + c2) * (3 + c2) / 8;
  }
  const double c = std::cos(theta);
  return c * c * c * c * (11 + 4 * c2 + std::cos(4 * theta)) / 16;
}

double alpha_star(double theta) {
  const double t = std::tan(theta / 2);
  return std::atan(t * t);
}

double d_asymptote_small(double theta) { return theta * theta; }

double d_asymptote_large(double theta) {
  const double eps = kPi / 2 - theta;
  if (eps <= 0.0) return 0.0;
  return (0.5 - std::numbers::log2e / 4 - std::log2(eps)) * eps * eps * eps * eps;
}

}  // namespace closed

}  // namespace qd
