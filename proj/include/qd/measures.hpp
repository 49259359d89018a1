#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qd/density.hpp"
#include "qd/measurement.hpp"
#include "qd/spin.hpp"

namespace qd {

/// Concave f with f(0) = f(1) = 0, applied spectrally: S_f(ρ) = Tr f(ρ).
struct EntropyFunctional {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> fprime;
};

/// −x log₂ x (von Neumann, bits).
EntropyFunctional von_neumann();
/// x(1 − x) (linear entropy, S₂ = 1 − Tr ρ²).
EntropyFunctional linear_entropy();

/// Eigenvalues of a density matrix below this are treated as zero when f′ is
/// singular there; f′ is applied on the support and extended by zero.
inline constexpr double kSupportCutoff = 1e-12;
/// Eigenvalues in [−kClampBelow, 0) are clamped to 0 before entropies.
inline constexpr double kClampBelow = 1e-10;

/// Σ_m (I_A ⊗ Π_m) ρ (I_A ⊗ Π_m) for a measurement on B (d_B = 3).
DensityMatrix apply_measurement(const DensityMatrix& rho, const MeasurementBasis& b);

/// −Tr ρ log₂ ρ
double vn_entropy(const DensityMatrix& rho);
/// Tr f(ρ)
double f_entropy(const DensityMatrix& rho, const EntropyFunctional& f);

struct MeasureAtM {
  double value = 0.0;
  DensityMatrix rho_prime;
  MeasurementBasis basis;
};

/// [S(ρ′) − S(ρ′_B)] − [S(ρ) − S(ρ_B)] at a fixed measurement, in bits.
MeasureAtM discord_given(const DensityMatrix& rho, const MeasurementBasis& b);
/// S_f(ρ′) − S_f(ρ) at a fixed measurement (raw units of f).
MeasureAtM deficit_given(const DensityMatrix& rho, const MeasurementBasis& b,
                         const EntropyFunctional& f);
/// 2·Tr(ρ² − ρ′²): the geometric discord in units where a Bell pair gives 1.
MeasureAtM geometric_discord_given(const DensityMatrix& rho, const MeasurementBasis& b);

struct StationarityResidual {
  ComplexMatrix delta;  ///< d_B × d_B, standard basis of B
  double norm = 0.0;    ///< Frobenius
  /// ρ has weight on the kernel of ρ′ (or ρ_B on that of ρ′_B), where the
  /// support convention for f′ is not exact.
  bool kernel_overlap = false;
};

/// Δ_f = Tr_A [f′(ρ′), ρ].
StationarityResidual stationarity_f(const DensityMatrix& rho, const MeasurementBasis& b,
                                    const EntropyFunctional& f);
/// Δ_D = Tr_A [f′(ρ′), ρ] − [f′(ρ′_B), ρ_B], f = −x log₂ x.
StationarityResidual stationarity_D(const DensityMatrix& rho, const MeasurementBasis& b);

/// ‖[ρ, P]‖_F < 1e−10.
bool parity_invariance_check(const DensityMatrix& rho, const ParityOperator& p);

enum class MeasureKind { discord, deficit };

/// A correlation measure minimized over measurements on B:
/// discord (D), or a deficit S_f(ρ′) − S_f(ρ) scaled by `scale`.
struct MeasureSpec {
  MeasureKind kind = MeasureKind::discord;
  EntropyFunctional f;
  double scale = 1.0;
  std::string name;

  static MeasureSpec discord();
  /// One-way information deficit I₁ (von Neumann f, bits).
  static MeasureSpec info_deficit();
  /// Geometric discord I₂ = 2·Tr(ρ² − ρ′²) (Bell pair = 1).
  static MeasureSpec geometric();
  static MeasureSpec generic(EntropyFunctional f, double scale = 1.0);
};

/// Fast repeated evaluation of one measure on one state for many bases.
/// Works on the three conditional A-blocks of ρ in the measured frame, so a
/// call costs a local rotation plus three d_A × d_A spectra.
class MeasureEvaluator {
 public:
  /// Throws DimensionError unless d_B = 3.
  MeasureEvaluator(const DensityMatrix& rho, MeasureSpec spec);

  /// Measure value (scaled units) for the basis given by the columns of `u`.
  double value(const ComplexMatrix& u) const;
  /// The matching stationarity operator (Δ_D or scale·Δ_f), standard frame.
  StationarityResidual residual(const ComplexMatrix& u) const;

  const MeasureSpec& spec() const noexcept { return spec_; }
  const DensityMatrix& state() const noexcept { return rho_; }

 private:
  DensityMatrix rho_;
  MeasureSpec spec_;
  ComplexMatrix rho_b_;
  double baseline_ = 0.0;  // subtracted constant: S_f(ρ) or S(ρ) − S(ρ_B)
  bool is_linear_ = false;
};

/// (I_A ⊗ U†) M (I_A ⊗ U) for a d_B × d_B unitary U.
ComplexMatrix to_measured_frame(const ComplexMatrix& m, std::size_t dim_a, const ComplexMatrix& u);
/// Inverse of to_measured_frame.
ComplexMatrix from_measured_frame(const ComplexMatrix& m, std::size_t dim_a,
                                  const ComplexMatrix& u);

}  // namespace qd
