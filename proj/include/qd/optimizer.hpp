#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qd/density.hpp"
#include "qd/measurement.hpp"
#include "qd/measures.hpp"

namespace qd {

/// Measurement families, ordered from most to least restricted.
enum class MeasurementFamily { spin, type_ii, type_iii, general };

inline constexpr std::array<MeasurementFamily, 4> kAllFamilies = {
    MeasurementFamily::spin, MeasurementFamily::type_ii, MeasurementFamily::type_iii,
    MeasurementFamily::general};

std::string_view family_name(MeasurementFamily f) noexcept;  // SPIN, TYPE_II, TYPE_III, GENERAL
/// Accepts the names above and the CLI spellings spin, ii, iii, general.
std::optional<MeasurementFamily> parse_family(std::string_view s) noexcept;
std::size_t free_params(MeasurementFamily f) noexcept;

/// One coordinate of a family's parameter box.
struct ParamBound {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;  ///< wrap into [lo, hi); otherwise reflect at the ends
};

std::vector<ParamBound> family_box(MeasurementFamily f);

/// Family coordinates → full six-angle parameters.
///   SPIN (θ_k, φ_k), TYPE_II (α, φ), TYPE_III (α, γ, φ), GENERAL (α, β, γ, ψ, θ_r, φ_r).
MeasurementParams to_params(MeasurementFamily f, std::span<const double> x);
/// Inverse of to_params for parameters that belong to the family.
std::vector<double> to_coordinates(MeasurementFamily f, const MeasurementParams& p);
/// Maps a coordinate vector into the family box (reflection / wrapping).
void fold_into_box(MeasurementFamily f, std::span<double> x);

struct OptimizerConfig {
  double tol = 1e-8;         ///< projected stationarity residual for convergence
  int max_iter = 5000;       ///< per start
  double fd_step = 1e-6;     ///< central differences, radians
  double min_step = 1e-10;   ///< stop when the accepted parameter step is smaller
  double initial_step = 0.2; ///< initial descent step length
  double grow = 1.2;
  double shrink = 0.5;
  double polish_tol = 1e-14;    ///< Newton polishing continues past `tol` down to this
  double newton_switch = 1e-3;  ///< try Newton steps once the gradient is this small
  double hessian_step = 1e-5;   ///< differences of the analytic gradient
  int n_spin = 5;
  int n_type_ii = 5;
  int n_type_iii = 4;
  int n_general = 3;
  int refine_top = 8;        ///< number of best grid seeds that are refined
  /// Families within max(tie_tol, tie_rel_tol·|best|) of the best value tie.
  double tie_tol = 1e-12;
  double tie_rel_tol = 1e-9;
  /// A later start must beat the incumbent by this much; hinted starts
  /// (extra and analytic seeds) are refined first and so win exact ties.
  double start_tie_tol = 1e-12;
  /// Adds the tan α = tan²(θ/2) seed for an aligned-mixture state at this θ.
  std::optional<double> aligned_theta;

  int n_per_axis(MeasurementFamily f) const noexcept;
  bool operator==(const OptimizerConfig&) const = default;
};

struct TracePoint {
  int iteration = 0;
  double value = 0.0;
};

struct RefineOutcome {
  MeasurementParams params;
  double value = 0.0;
  double residual_norm = 0.0;  ///< stationarity operator projected on family tangents
  double gradient_norm = 0.0;  ///< finite-difference gradient, same projection
  int iterations = 0;
  bool budget_exhausted = false;
  std::vector<TracePoint> trace;
};

/// Minimum values in (−kNegativeRounding, 0) are reported as 0.
inline constexpr double kNegativeRounding = 1e-12;

struct OptimizationResult {
  double value = 0.0;
  MeasurementParams params;
  MeasurementFamily family = MeasurementFamily::general;
  MeasurementType type;
  double residual_norm = 0.0;
  double gradient_norm = 0.0;
  int starts = 0;
  bool converged = false;
  std::vector<TracePoint> trace;
};

/// Deterministic lattice over the family box (n per axis; closed ends for
/// reflected coordinates, half-open for periodic ones), plus the analytic
/// aligned-mixture seeds when `aligned_theta` is given.
std::vector<MeasurementParams> seed_grid(MeasurementFamily f, int n_per_axis,
                                         std::optional<double> aligned_theta = std::nullopt);

/// Generators K_j = (∂U/∂x_j) U† of the family coordinates at `p`.
std::vector<ComplexMatrix> family_generators(MeasurementFamily f, const MeasurementParams& p,
                                             double step = 1e-6);

/// Stationarity operator projected on the family tangents: the vector
/// Re Tr(K_j Δ), with components pushing out of the box at a bound removed.
std::vector<double> projected_residual(const MeasureEvaluator& eval, MeasurementFamily f,
                                       const MeasurementParams& p);

/// Central finite-difference gradient of the measure in family coordinates.
std::vector<double> fd_gradient(const MeasureEvaluator& eval, MeasurementFamily f,
                                std::span<const double> x, double step);

/// Adaptive-step gradient descent from `start`, finished with regularized
/// Newton steps on the analytic gradient.
RefineOutcome refine(const MeasureEvaluator& eval, MeasurementFamily f,
                     const MeasurementParams& start, const OptimizerConfig& cfg);

/// Multi-start minimization of one measure over one family. `extra_seeds`
/// are always refined (used to warm-start GENERAL from restricted optima).
OptimizationResult minimize(const DensityMatrix& rho, const MeasureSpec& measure,
                            MeasurementFamily f, const OptimizerConfig& cfg,
                            std::span<const MeasurementParams> extra_seeds = {});

struct FamilyComparison {
  std::map<MeasurementFamily, OptimizationResult> per_family;
  MeasurementFamily optimal = MeasurementFamily::general;  ///< most restricted among ties
  std::vector<MeasurementFamily> ties;                     ///< all within the tie tolerance of the best
  double best_value = 0.0;

  const OptimizationResult& best() const { return per_family.at(optimal); }
};

/// Runs every family (GENERAL warm-started from the restricted optima).
FamilyComparison minimize_all_families(const DensityMatrix& rho, const MeasureSpec& measure,
                                       const OptimizerConfig& cfg);
/// Same, over a chosen subset of families.
FamilyComparison minimize_families(const DensityMatrix& rho, const MeasureSpec& measure,
                                   std::span<const MeasurementFamily> families,
                                   const OptimizerConfig& cfg);

}  // namespace qd
