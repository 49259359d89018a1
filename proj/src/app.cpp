#include "qd/app.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qd/error.hpp"

namespace qd::app {

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

SweepRow::Entry entry(const FamilyComparison& c) {
  const OptimizationResult& r = c.best();
  return {c.best_value, c.optimal, r.params, r.residual_norm, r.converged};
}

bool all_converged(const FamilyComparison& c) { return c.best().converged; }

io::json measure_block(const DensityMatrix& rho, const OptimizerConfig& cfg, bool& converged) {
  io::json out = io::json::object();
  for (const MeasureSpec& m : {MeasureSpec::discord(), MeasureSpec::info_deficit(), MeasureSpec::geometric()}) {
    const FamilyComparison c = minimize_all_families(rho, m, cfg);
    converged = converged && all_converged(c);
    out[m.name] = io::comparison_to_json(c);
  }
  return out;
}

}  // namespace

std::vector<MeasureSpec> parse_measures(const std::string& s) {
  std::vector<MeasureSpec> out;
  auto add = [&](MeasureSpec m) {
    for (const auto& x : out) {
      if (x.name == m.name) return;
    }
    out.push_back(std::move(m));
  };
  for (const std::string& item : split(s)) {
    if (item == "d" || item == "all") add(MeasureSpec::discord());
    if (item == "i1" || item == "all") add(MeasureSpec::info_deficit());
    if (item == "i2" || item == "all") add(MeasureSpec::geometric());
    if (item != "d" && item != "i1" && item != "i2" && item != "all") {
      throw UsageError("unknown measure \"" + item + "\" (expected d, i1, i2 or all)");
    }
  }
  if (out.empty()) throw UsageError("no measure selected");
  return out;
}

std::vector<MeasurementFamily> parse_families(const std::string& s) {
  std::vector<MeasurementFamily> out;
  for (const std::string& item : split(s)) {
    if (item == "all") {
      out = {MeasurementFamily::spin, MeasurementFamily::type_ii, MeasurementFamily::type_iii,
             MeasurementFamily::general};
      continue;
    }
    if (item == "spin") out.push_back(MeasurementFamily::spin);
    else if (item == "ii") out.push_back(MeasurementFamily::type_ii);
    else if (item == "iii") out.push_back(MeasurementFamily::type_iii);
    else if (item == "general") out.push_back(MeasurementFamily::general);
    else throw UsageError("unknown family \"" + item + "\" (expected spin, ii, iii, general or all)");
  }
  if (out.empty()) throw UsageError("no family selected");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

io::json cmd_diagram(MeasurementParams p) {
  // Angles typed with four decimals land just past the bounds.
  constexpr double kSnap = 1e-4;
  const double top = std::numbers::pi / 4;
  for (double* a : {&p.alpha, &p.beta}) {
    if (*a > top && *a < top + kSnap) *a = top;
    if (*a < 0.0 && *a > -kSnap) *a = 0.0;
  }
  validate(p);
  return io::diagram_record(p);
}

DiscordReport run_discord(const io::StateFile& state, const std::vector<MeasureSpec>& measures,
                          const std::vector<MeasurementFamily>& families, OptimizerConfig cfg) {
  if (state.rho.dims().b != 3) {
    throw DimensionError("the measured subsystem must be a qutrit (d_B = 3)");
  }
  if (!cfg.aligned_theta && state.theta) cfg.aligned_theta = state.theta;
  DiscordReport report;
  report.json = {{"dims", {state.rho.dims().a, state.rho.dims().b}},
                 {"config", io::config_to_json(cfg)},
                 {"measures", io::json::object()}};
  for (const MeasureSpec& m : measures) {
    const FamilyComparison c = minimize_families(state.rho, m, families, cfg);
    report.converged = report.converged && all_converged(c);
    report.json["measures"][m.name] = io::comparison_to_json(c);
  }
  report.json["converged"] = report.converged;
  return report;
}

void validate(const SweepOptions& opts) {
  const double top = std::numbers::pi / 2;
  if (!(opts.theta_min >= 0.0 && opts.theta_min < opts.theta_max && opts.theta_max <= top + 1e-12)) {
    throw UsageError("sweep range must satisfy 0 <= theta-min < theta-max <= pi/2");
  }
  if (opts.points < 2) throw UsageError("sweep needs at least 2 points");
}

SweepRow sweep_row(double theta, const OptimizerConfig& base) {
  OptimizerConfig cfg = base;
  cfg.aligned_theta = theta;
  const DensityMatrix rho = aligned_mixture(theta).rho;
  SweepRow row;
  row.theta = theta;
  row.d_detail = minimize_all_families(rho, MeasureSpec::discord(), cfg);
  row.i1_detail = minimize_all_families(rho, MeasureSpec::info_deficit(), cfg);
  row.i2_detail = minimize_all_families(rho, MeasureSpec::geometric(), cfg);
  row.d = entry(row.d_detail);
  row.i1 = entry(row.i1_detail);
  row.i2 = entry(row.i2_detail);
  row.d_closed = closed::d_closed(theta);
  row.i2_closed = closed::i2_closed(theta);
  return row;
}

std::vector<SweepRow> run_sweep(const SweepOptions& opts, const OptimizerConfig& cfg) {
  validate(opts);
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(opts.points));
  for (int k = 0; k < opts.points; ++k) {
    double theta = opts.theta_min + (opts.theta_max - opts.theta_min) * k / (opts.points - 1);
    if (k == opts.points - 1) theta = std::min(opts.theta_max, std::numbers::pi / 2);
    rows.push_back(sweep_row(theta, cfg));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  using io::format_number;
  out << "theta,D,I1,I2,D_family,I1_family,I2_family,alpha,beta,gamma,phi,"
         "D_residual,I1_residual,I2_residual,D_closed,I2_closed\n";
  for (const SweepRow& r : rows) {
    const MeasurementParams& p = r.i1.params;
    out << format_number(r.theta) << ',' << format_number(r.d.value) << ','
        << format_number(r.i1.value) << ',' << format_number(r.i2.value) << ','
        << family_name(r.d.family) << ',' << family_name(r.i1.family) << ','
        << family_name(r.i2.family) << ',' << format_number(p.alpha) << ','
        << format_number(p.beta) << ',' << format_number(p.gamma) << ','
        << format_number(p.psi) << ',' << format_number(r.d.residual) << ','
        << format_number(r.i1.residual) << ',' << format_number(r.i2.residual) << ','
        << format_number(r.d_closed) << ',' << format_number(r.i2_closed) << '\n';
  }
}

ChainReport run_chain(const ChainOptions& opts, const OptimizerConfig& cfg) {
  ChainReport report;
  StateVector psi;
  std::size_t n = opts.n;
  Spin s = kSpinOne;
  if (opts.spec) {
    n = opts.spec->n;
    s = opts.spec->s;
    const ComplexMatrix h = xyz_hamiltonian(*opts.spec, opts.max_dim);
    const GroundState gs = ground_state(h);
    psi = gs.state;
    const std::vector<Spin> sites(n, s);
    const ParityOperator p = composite_parity(sites);
    report.json["source"] = "ground_state";
    report.json["ground_energy"] = gs.energy;
    report.json["gap"] = gs.gap;
    report.json["degenerate"] = gs.degenerate;
    report.json["hamiltonian_parity_commutator"] = frobenius_norm(commutator(h, p.matrix));
    report.json["parity_check"] = frobenius_norm(commutator(h, p.matrix)) < 1e-10;
    report.json["chain"] = io::chain_to_json(*opts.spec);
  } else {
    std::size_t dim = 1;
    for (std::size_t k = 0; k < n; ++k) dim *= 3;
    if (dim > opts.max_dim) throw DimensionError("chain Hilbert space exceeds the configured cap");
    psi = fixed_parity_state(n, opts.theta, opts.sign);
    report.json["source"] = "fixed_parity";
    report.json["theta"] = opts.theta;
    report.json["sign"] = opts.sign;
    const std::vector<Spin> sites(n, s);
    const ParityOperator p = composite_parity(sites);
    const StateVector ppsi = p.matrix * psi;
    report.json["parity_expectation"] = inner(psi, ppsi).real();
  }
  if (s != kSpinOne) throw DimensionError("measures need spin-1 sites");
  if (opts.site_a >= opts.site_b || opts.site_b >= n) {
    throw DomainError("pair sites must satisfy i < j < n");
  }
  const DensityMatrix pair = reduce_pair(psi, n, opts.site_a, opts.site_b, s.dim());
  const std::array<Spin, 2> two{s, s};
  report.json["n"] = n;
  report.json["pair"] = {opts.site_a, opts.site_b};
  report.json["pair_parity_check"] = parity_invariance_check(pair, composite_parity(two));
  report.json["pair_state"] = io::state_to_json(pair);
  report.json["measures"] = measure_block(pair, cfg, report.converged);
  report.json["converged"] = report.converged;
  return report;
}

}  // namespace qd::app
