#include "qd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qd/eig.hpp"
#include "qd/error.hpp"
#include "qd/kernels.hpp"
#include "qd/measurement.hpp"
#include "qd/measures.hpp"
#include "qd/models.hpp"
#include "qd/optimizer.hpp"
#include "qd/random.hpp"

namespace qd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxMessages = 8;

class Checker {
 public:
  explicit Checker(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& what) {
    if (ok) {
      ++r_.passed;
      return;
    }
    ++r_.failed;
    if (r_.failures.size() < kMaxMessages) r_.failures.push_back(what());
  }

  void track_max(const std::string& key, double v) {
    auto& d = r_.details;
    if (!d.contains(key) || d[key].get<double>() < v) d[key] = v;
  }

  SuiteResult& result() { return r_; }

 private:
  SuiteResult r_;
};

std::string fmt(const char* what, double v) {
  std::ostringstream s;
  s << what << " = " << v;
  return s.str();
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double det3(const std::array<Vec3, 3>& v) {
  return v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
         v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
         v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
}

SuiteResult linalg_suite(int draws, sample::Rng& rng) {
  Checker c("linalg");
  for (int k = 0; k < draws; ++k) {
    const std::size_t n = (k % 2 == 0) ? 3 : 9;
    const ComplexMatrix m = sample::hermitian(rng, n);
    const HermitianEig e = hermitian_eig(m);
    const ComplexMatrix& v = e.eigenvectors;
    const double rec = frobenius_distance(v * ComplexMatrix::diagonal(e.eigenvalues) * v.adjoint(), m);
    const double orth = frobenius_distance(v.adjoint() * v, ComplexMatrix::identity(n));
    const double scale = std::max(1.0, frobenius_norm(m));
    c.track_max("max_reconstruction", rec / scale);
    c.check(rec <= 1e-10 * scale, [&] { return fmt("eig reconstruction", rec); });
    c.check(orth <= 1e-10, [&] { return fmt("eigenvector orthonormality", orth); });
    c.check(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()),
            [] { return std::string("eigenvalues not ascending"); });
  }

  // SIMD kernels against the scalar reference.
  const auto& ref = kernels::scalar_table();
  const auto& act = kernels::active();
  for (int k = 0; k < std::max(1, draws / 10); ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 37);
    const StateVector x = sample::gaussian_vector(rng, n);
    const StateVector y0 = sample::gaussian_vector(rng, n);
    const cplx a(0.3 + 0.01 * k, -1.1);
    StateVector y1 = y0, y2 = y0;
    ref.caxpy(n, a, x.data(), y1.data());
    act.caxpy(n, a, x.data(), y2.data());
    const double ax = frobenius_distance(ComplexMatrix(1, n, y1), ComplexMatrix(1, n, y2));
    const cplx d1 = ref.cdotc(n, x.data(), y0.data()), d2 = act.cdotc(n, x.data(), y0.data());
    const double n1 = ref.norm_sq(n, x.data()), n2 = act.norm_sq(n, x.data());
    StateVector p1 = x, q1 = y0, p2 = x, q2 = y0;
    const cplx b11(0.6, 0.1), b12(-0.2, 0.7), b21(0.4, -0.3), b22(0.9, 0.2);
    ref.rot2(n, p1.data(), q1.data(), b11, b12, b21, b22);
    act.rot2(n, p2.data(), q2.data(), b11, b12, b21, b22);
    const double rot = frobenius_distance(ComplexMatrix(1, n, p1), ComplexMatrix(1, n, p2)) +
                       frobenius_distance(ComplexMatrix(1, n, q1), ComplexMatrix(1, n, q2));
    const double worst = std::max({ax, std::abs(d1 - d2), std::abs(n1 - n2), rot});
    c.track_max("max_kernel_deviation", worst);
    c.check(worst <= 1e-12 * (1.0 + static_cast<double>(n)), [&] { return fmt("kernel deviation", worst); });
  }

  // Partial traces of products recover the factors.
  for (int k = 0; k < std::max(1, draws / 10); ++k) {
    const DensityMatrix a = sample::density(rng, {1, 3}, 2);
    const DensityMatrix b = sample::density(rng, {1, 3}, 3);
    const ComplexMatrix ab = kron(a.matrix(), b.matrix());
    const double ea = frobenius_distance(partial_trace(ab, {3, 3}, Subsystem::A), a.matrix());
    const double eb = frobenius_distance(partial_trace(ab, {3, 3}, Subsystem::B), b.matrix());
    c.check(std::max(ea, eb) <= 1e-12, [&] { return fmt("partial trace", std::max(ea, eb)); });
  }
  return c.result();
}

SuiteResult diagrams_suite(int draws, sample::Rng& rng) {
  Checker c("diagrams");
  for (int k = 0; k < draws; ++k) {
    const MeasurementParams p = sample::general_params(rng);
    const MeasurementBasis b = full_basis(p);
    const double unit = frobenius_distance(b.unitary().adjoint() * b.unitary(), ComplexMatrix::identity(3));
    c.check(unit <= 1e-12, [&] { return fmt("basis unitarity", unit); });

    const SpinDiagram d = spin_diagram(b);
    const auto& v = d.vectors;
    Vec3 sum{};
    for (const Vec3& x : v)
      for (int mu = 0; mu < 3; ++mu) sum[mu] += x[mu];
    const double zero_sum = std::sqrt(dot(sum, sum));
    const double coplanar = std::abs(det3(v));
    const double max_dot = std::max({dot(v[0], v[1]), dot(v[0], v[2]), dot(v[1], v[2])});
    c.track_max("max_zero_sum", zero_sum);
    c.track_max("max_pairwise_dot", max_dot);
    c.track_max("max_L_squared", d.total_length_sq);
    c.check(zero_sum <= 1e-10, [&] { return fmt("diagram zero-sum", zero_sum); });
    c.check(coplanar <= 1e-10, [&] { return fmt("diagram coplanarity", coplanar); });
    c.check(max_dot <= 1e-10, [&] { return fmt("pairwise dot", max_dot); });
    c.check(d.total_length_sq <= 8.0 / 3.0 + 1e-9, [&] { return fmt("L_S^2", d.total_length_sq); });
  }

  const double a13 = 0.5 * std::asin(1.0 / 3.0);
  const SpinDiagram y = spin_diagram(intrinsic_basis(a13, kPi / 4, 0.0));
  c.check(std::abs(y.total_length_sq - 8.0 / 3.0) <= 1e-10,
          [&] { return fmt("L_S^2 at sin2a = 1/3", y.total_length_sq); });
  const MeasurementType z = classify(intrinsic_basis(kPi / 4, 0.0, 0.0));
  c.check(z.zero_diagram, [] { return std::string("alpha = pi/4 diagram not zero"); });
  const MeasurementType spin = classify(intrinsic_basis(0.0, 0.0, 0.0));
  c.check(spin.label == MeasurementLabel::spin, [] { return std::string("standard basis not type I"); });
  const MeasurementType y_type = classify(intrinsic_basis(a13, kPi / 4, 0.0));
  c.check(y_type.label == MeasurementLabel::y_type, [] { return std::string("symmetric Y not type III"); });
  return c.result();
}

SuiteResult measures_suite(int draws, sample::Rng& rng) {
  Checker c("measures");
  const EntropyFunctional vn = von_neumann();
  for (int k = 0; k < draws; ++k) {
    const std::size_t rank = 1 + static_cast<std::size_t>(k % 9);
    const DensityMatrix rho = sample::density(rng, {3, 3}, rank);
    const MeasurementParams p = sample::general_params(rng);
    const MeasurementBasis b = full_basis(p);

    const double d_direct = discord_given(rho, b).value;
    const double i1_direct = deficit_given(rho, b, vn).value;
    const double i2_direct = geometric_discord_given(rho, b).value;
    const double d_fast = MeasureEvaluator(rho, MeasureSpec::discord()).value(b.unitary());
    const double i1_fast = MeasureEvaluator(rho, MeasureSpec::info_deficit()).value(b.unitary());
    const double i2_fast = MeasureEvaluator(rho, MeasureSpec::geometric()).value(b.unitary());
    const double route = std::max({std::abs(d_direct - d_fast), std::abs(i1_direct - i1_fast),
                                   std::abs(i2_direct - i2_fast)});
    c.track_max("max_route_difference", route);
    c.check(route <= 1e-9, [&] { return fmt("direct vs block route", route); });
    c.check(d_direct >= 0 && i1_direct >= 0 && i2_direct >= 0,
            [&] { return fmt("negative measure", std::min({d_direct, i1_direct, i2_direct})); });
    c.check(i1_direct >= d_direct - 1e-12, [&] { return fmt("I1 - D", i1_direct - d_direct); });

    // Stationarity operators: anti-Hermitian with zero measured diagonal.
    for (const StationarityResidual& r : {stationarity_D(rho, b), stationarity_f(rho, b, vn)}) {
      const double herm = frobenius_norm(r.delta + r.delta.adjoint());
      const ComplexMatrix in_basis = b.unitary().adjoint() * r.delta * b.unitary();
      double diag = 0.0;
      for (std::size_t m = 0; m < 3; ++m) diag = std::max(diag, std::abs(in_basis(m, m)));
      c.check(herm <= 1e-10 && diag <= 1e-10, [&] { return fmt("Delta structure", std::max(herm, diag)); });
    }

    // Gradient identity on full-rank states, where f′ is smooth.
    if (rank == 9) {
      const MeasureEvaluator ev(rho, MeasureSpec::info_deficit());
      const auto x = std::vector<double>{p.alpha, p.beta, p.gamma, p.psi, p.theta_r, p.phi_r};
      const auto fd = fd_gradient(ev, MeasurementFamily::general, x, 1e-6);
      const auto gens = family_generators(MeasurementFamily::general, p);
      const ComplexMatrix delta = ev.residual(b.unitary()).delta;
      double worst = 0.0;
      for (std::size_t j = 0; j < gens.size(); ++j)
        worst = std::max(worst, std::abs(trace(gens[j] * delta).real() - fd[j]));
      c.track_max("max_gradient_identity", worst);
      c.check(worst <= 1e-6, [&] { return fmt("Re Tr(K Delta) vs FD", worst); });
    }
  }
  return c.result();
}

SuiteResult closedforms_suite(int points, const OptimizerConfig& base) {
  Checker c("closedforms");
  nlohmann::json errata = nlohmann::json::array();
  const int n = std::max(points, 2);
  for (int k = 0; k < n; ++k) {
    const double theta = (kPi / 2) * k / (n - 1);
    const DensityMatrix rho = aligned_mixture(theta).rho;
    OptimizerConfig cfg = base;
    cfg.aligned_theta = theta;
    const double d_num = minimize_all_families(rho, MeasureSpec::discord(), cfg).best_value;
    const double i2_num = minimize_all_families(rho, MeasureSpec::geometric(), cfg).best_value;
    const double dd = std::abs(d_num - closed::d_closed(theta));
    const double di = std::abs(i2_num - closed::i2_closed(theta));
    c.track_max("max_D_deviation", dd);
    c.track_max("max_I2_deviation", di);
    if (dd > 1e-6 || di > 1e-6) {
      errata.push_back({{"theta", theta},
                        {"D_numeric", d_num},
                        {"D_closed", closed::d_closed(theta)},
                        {"I2_numeric", i2_num},
                        {"I2_closed", closed::i2_closed(theta)}});
    }
    c.check(dd <= 1e-6, [&] { return fmt("D closed-form deviation", dd); });
    c.check(di <= 1e-6, [&] { return fmt("I2 closed-form deviation", di); });
  }
  const double tc = closed::theta_c();
  c.check(std::abs(closed::i2_closed(tc) - 2.0 / 9.0) <= 1e-12,
          [&] { return fmt("I2 at theta_c", closed::i2_closed(tc)); });
  const double left = closed::i2_closed(tc - 1e-13), right = closed::i2_closed(tc + 1e-13);
  c.check(std::abs(left - right) <= 1e-12, [&] { return fmt("I2 branch jump", left - right); });
  c.result().details["errata"] = errata;
  return c.result();
}

SuiteResult parity_suite(int draws, sample::Rng& rng) {
  Checker c("parity");
  const std::array<Spin, 2> sites{kSpinOne, kSpinOne};
  const ParityOperator p = composite_parity(sites);
  for (int k = 0; k < draws; ++k) {
    const DensityMatrix raw = sample::density(rng, {3, 3}, 1 + static_cast<std::size_t>(k % 9));
    const DensityMatrix rho((raw.matrix() + p.matrix * raw.matrix() * p.matrix) * 0.5, {3, 3});
    const MeasurementParams mp = (k % 2 == 0) ? sample::type_ii_params(rng) : sample::type_iii_params(rng);
    const MeasurementBasis b = full_basis(mp);
    const DensityMatrix after = apply_measurement(rho, b);
    const double comm = frobenius_norm(commutator(after.matrix(), p.matrix));
    c.track_max("max_commutator", comm);
    c.check(comm <= 1e-10, [&] { return fmt("[rho', P]", comm); });
    c.check(classify(b).parity_preserving, [] { return std::string("II/III basis not parity preserving"); });
  }

  for (int k = 0; k < std::max(1, draws / 20); ++k) {
    std::uniform_real_distribution<double> u(0.0, kPi / 2);
    const DensityMatrix rho = aligned_mixture(u(rng)).rho;
    c.check(parity_invariance_check(rho, p), [] { return std::string("aligned mixture breaks parity"); });

    std::normal_distribution<double> g;
    XYZChainSpec spec = XYZChainSpec::uniform(3, g(rng), g(rng), g(rng), g(rng));
    spec.jxy.push_back({0, 2, g(rng)});
    const ComplexMatrix h = xyz_hamiltonian(spec);
    const std::array<Spin, 3> three{kSpinOne, kSpinOne, kSpinOne};
    const ParityOperator p3 = composite_parity(three);
    const double hc = frobenius_norm(commutator(h, p3.matrix));
    c.check(hc <= 1e-10, [&] { return fmt("[H, P]", hc); });
    const DensityMatrix th = thermal_state(h, std::abs(g(rng)), {1, 27});
    const double tc = frobenius_norm(commutator(th.matrix(), p3.matrix));
    c.check(tc <= 1e-10, [&] { return fmt("[rho_beta, P]", tc); });
  }
  return c.result();
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"linalg", "diagrams", "measures", "closedforms", "parity"};
  return names;
}

bool VerifyReport::ok() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json out = {{"ok", ok()}, {"suites", nlohmann::json::array()}};
  for (const auto& s : suites) {
    out["suites"].push_back({{"name", s.name},
                             {"passed", s.passed},
                             {"failed", s.failed},
                             {"failures", s.failures},
                             {"details", s.details}});
  }
  return out;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  if (opts.draws < 1) throw UsageError("verify: draws must be positive");
  std::vector<std::string> wanted = opts.suites.empty() ? verify_suite_names() : opts.suites;
  for (const auto& s : wanted) {
    const auto& names = verify_suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw UsageError("verify: unknown suite \"" + s + "\"");
    }
  }
  VerifyReport report;
  for (const auto& s : wanted) {
    // Each suite gets its own stream so results do not depend on selection.
    sample::Rng rng(opts.seed + std::hash<std::string>{}(s));
    if (s == "linalg") report.suites.push_back(linalg_suite(opts.draws, rng));
    if (s == "diagrams") report.suites.push_back(diagrams_suite(opts.draws, rng));
    if (s == "measures") report.suites.push_back(measures_suite(opts.draws, rng));
    if (s == "closedforms") report.suites.push_back(closedforms_suite(opts.grid_points, OptimizerConfig{}));
    if (s == "parity") report.suites.push_back(parity_suite(opts.draws, rng));
  }
  return report;
}

}  // namespace qd
