#pragma once

#include <cstddef>
#include <vector>

#include "qd/density.hpp"
#include "qd/matrix.hpp"
#include "qd/spin.hpp"

namespace qd {

/// ½(|θθ⟩⟨θθ| + |−θ−θ⟩⟨−θ−θ|) for two spin-1 sites.
struct AlignedMixtureState {
  double theta = 0.0;
  DensityMatrix rho;
};

/// Throws DomainError unless θ ∈ [0, π/2].
AlignedMixtureState aligned_mixture(double theta);

/// (|θ…θ⟩ ± |−θ…−θ⟩)/N on n spin-1 sites. Throws DomainError if n < 2,
/// θ ∉ [0, π/2] or the unnormalized norm falls below 1e-8.
StateVector fixed_parity_state(std::size_t n, double theta, int sign);

/// Reduced state of sites (i, j), i < j, of an n-site state with local
/// dimension `local_dim`. The result has dims {local_dim, local_dim}.
DensityMatrix reduce_pair(std::span<const cplx> psi, std::size_t n, std::size_t i, std::size_t j,
                          std::size_t local_dim = 3);

struct Coupling {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
  bool operator==(const Coupling&) const = default;
};

/// H = Σ_i b_i S_z^i − Σ_μ Σ_{(i,j)} J^μ_{ij} S_μ^i S_μ^j − Σ J^{xy}_{ij} S_x^i S_y^j.
struct XYZChainSpec {
  std::size_t n = 2;
  Spin s = kSpinOne;
  std::vector<double> b;  ///< one per site
  std::vector<Coupling> jx, jy, jz;
  std::vector<Coupling> jxy;

  /// Open chain, nearest neighbours, uniform couplings and field.
  static XYZChainSpec uniform(std::size_t n, double field, double jx, double jy, double jz);
  bool operator==(const XYZChainSpec&) const = default;
};

/// (J^y − J^z)/(J^x − J^z).
double anisotropy(double jx, double jy, double jz);

/// Throws DimensionError if the Hilbert space exceeds max_dim, DomainError
/// for bad site indices or a field list of the wrong length.
ComplexMatrix xyz_hamiltonian(const XYZChainSpec& spec, std::size_t max_dim = 729);

struct GroundState {
  double energy = 0.0;
  StateVector state;
  double gap = 0.0;
  bool degenerate = false;  ///< gap < 1e-10: parity of the returned vector not guaranteed
};

GroundState ground_state(const ComplexMatrix& h);
/// exp(−βH)/Z, computed with the ground energy shifted out.
DensityMatrix thermal_state(const ComplexMatrix& h, double beta, BipartiteDims dims);

/// (|1,1⟩ + |−1,−1⟩)/√2 on two qutrits.
DensityMatrix bell_anchor();

namespace closed {

/// −x log₂ x − (ν − x) log₂(ν − x), with 0 log 0 = 0.
double h_nu(double nu, double x);
double p_theta(double theta);
double q_theta(double theta);
/// arccos(3^{−1/4})
double theta_c();
/// Discord of the aligned mixture, bits.
double d_closed(double theta);
/// Geometric discord of the aligned mixture, Bell = 1 units.
double i2_closed(double theta);
/// atan(tan²(θ/2))
double alpha_star(double theta);
/// θ²
double d_asymptote_small(double theta);
/// [1/2 − log₂e/4 − log₂ε] ε⁴ with ε = π/2 − θ.
double d_asymptote_large(double theta);

}  // namespace closed

}  // namespace qd
