#pragma once

// Command implementations behind the qdisc executable. Each returns data;
// printing and exit codes are left to the caller.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qd/io.hpp"
#include "qd/measures.hpp"
#include "qd/models.hpp"
#include "qd/optimizer.hpp"

namespace qd::app {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kInputFormat = 3,
  kNonConvergence = 4,
};

/// "d", "i1", "i2" or "all" (comma-separated lists allowed). Throws UsageError.
std::vector<MeasureSpec> parse_measures(const std::string& s);
/// "spin", "ii", "iii", "general" or "all" (comma-separated). Throws UsageError.
std::vector<MeasurementFamily> parse_families(const std::string& s);

/// α and β within 1e-4 outside [0, π/4] are snapped onto the bound.
io::json cmd_diagram(MeasurementParams p);

struct DiscordReport {
  io::json json;
  bool converged = true;  ///< every requested measure's optimum converged
};

/// Minimizes every measure over the chosen families. A theta recorded in
/// the state file enables the analytic seed unless the config sets one.
DiscordReport run_discord(const io::StateFile& state, const std::vector<MeasureSpec>& measures,
                          const std::vector<MeasurementFamily>& families, OptimizerConfig cfg);

struct SweepRow {
  double theta = 0.0;
  struct Entry {
    double value = 0.0;
    MeasurementFamily family = MeasurementFamily::general;
    MeasurementParams params;
    double residual = 0.0;
    bool converged = true;
  };
  Entry d, i1, i2;
  double d_closed = 0.0;
  double i2_closed = 0.0;
  FamilyComparison d_detail, i1_detail, i2_detail;
};

struct SweepOptions {
  double theta_min = 0.0;
  double theta_max = 1.5707963267948966;
  int points = 50;
};

/// Throws UsageError unless 0 ≤ θmin < θmax ≤ π/2 and points ≥ 2.
void validate(const SweepOptions& opts);
/// linspace(θmin, θmax, points) on the aligned mixture, rows in θ order.
std::vector<SweepRow> run_sweep(const SweepOptions& opts, const OptimizerConfig& cfg);
SweepRow sweep_row(double theta, const OptimizerConfig& cfg);

/// theta, D, I1, I2, D_family, I1_family, I2_family, alpha, beta, gamma, phi,
/// D_residual, I1_residual, I2_residual, D_closed, I2_closed. The angle
/// columns describe the I₁ optimum (phi is its outer z rotation ψ).
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct ChainOptions {
  std::optional<XYZChainSpec> spec;  ///< ground state of this chain, or
  std::size_t n = 4;                 ///< the fixed-parity product superposition
  double theta = 0.0;
  int sign = +1;
  std::size_t site_a = 0;
  std::size_t site_b = 1;
  std::size_t max_dim = 729;
};

struct ChainReport {
  io::json json;
  bool converged = true;
};

/// Ground state (or fixed-parity state), parity check, reduced pair and its
/// D, I₁, I₂. Throws DimensionError above max_dim or for non-qutrit sites.
ChainReport run_chain(const ChainOptions& opts, const OptimizerConfig& cfg);

}  // namespace qd::app
