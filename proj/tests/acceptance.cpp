// One pass/fail line per acceptance criterion on the aligned-mixture
// benchmark and its companions. Exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "qd/app.hpp"
#include "qd/measures.hpp"
#include "qd/models.hpp"
#include "qd/optimizer.hpp"
#include "qd/random.hpp"

using namespace qd;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGridPoints = 50;

int g_failed = 0;

void report(int id, const char* title, bool ok, const std::string& detail, double seconds) {
  std::printf("[%s] %2d %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool interior(double theta) { return theta > 1e-12 && theta < kPi / 2 - 1e-12; }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = a + (b - a) * k / (n - 1);
  return out;
}

// Oracles computed without the library's measurement code.

// Σ_m (I ⊗ |m⟩⟨m|) ρ (I ⊗ |m⟩⟨m|) with the basis given as unitary columns.
ComplexMatrix measure_oracle(const ComplexMatrix& rho, std::size_t da, const ComplexMatrix& u) {
  ComplexMatrix out(da * 3, da * 3);
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        cplx block = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t l = 0; l < 3; ++l)
            block += std::conj(u(k, m)) * rho(i * 3 + k, j * 3 + l) * u(l, m);
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t l = 0; l < 3; ++l) out(i * 3 + k, j * 3 + l) += u(k, m) * block * std::conj(u(l, m));
      }
  }
  return out;
}

// ⟨m|S_μ|m⟩ with the spin-1 matrices written out.
std::array<Vec3, 3> diagram_oracle(const ComplexMatrix& u) {
  const double r = 1.0 / std::numbers::sqrt2;
  const ComplexMatrix sx{{0.0, r, 0.0}, {r, 0.0, r}, {0.0, r, 0.0}};
  const ComplexMatrix sy{{0.0, cplx(0, -r), 0.0}, {cplx(0, r), 0.0, cplx(0, -r)}, {0.0, cplx(0, r), 0.0}};
  const ComplexMatrix sz{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, -1.0}};
  std::array<Vec3, 3> out{};
  for (std::size_t m = 0; m < 3; ++m) {
    const StateVector v = u.column(m);
    out[m] = {expectation(sx, v).real(), expectation(sy, v).real(), expectation(sz, v).real()};
  }
  return out;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const FamilyComparison& detail(const app::SweepRow& r, int measure) {
  return measure == 0 ? r.d_detail : (measure == 1 ? r.i1_detail : r.i2_detail);
}

const char* kMeasureNames[3] = {"D", "I1", "I2"};

}  // namespace

int main() {
  const OptimizerConfig cfg;
  std::printf("50-point grid linspace(0, pi/2, 50); analytic alpha seed enabled per theta\n");
  Timer sweep_timer;
  const std::vector<app::SweepRow> rows = app::run_sweep({0.0, kPi / 2, kGridPoints}, cfg);
  const double sweep_seconds = sweep_timer.seconds();
  std::printf("sweep computed in %.1f s\n", sweep_seconds);

  {  // 1
    Timer t;
    double worst = 0.0;
    for (const app::SweepRow* r : {&rows.front(), &rows.back()}) {
      worst = std::max({worst, std::abs(r->d.value), std::abs(r->i1.value), std::abs(r->i2.value)});
    }
    report(1, "endpoint zeros", worst <= 1e-10, fmt("max |value| at theta in {0, pi/2} = %.2e", worst),
           t.seconds());
  }

  {  // 2
    Timer t;
    const double tc = closed::theta_c();
    OptimizerConfig hinted = cfg;
    hinted.aligned_theta = tc;
    const double at_tc = minimize_all_families(aligned_mixture(tc).rho, MeasureSpec::geometric(), hinted).best_value;
    const double dev = std::abs(at_tc - 2.0 / 9.0);

    const std::vector<double> grid = linspace(0.0, kPi / 2, 200);
    const double step = grid[1] - grid[0];
    std::vector<MeasurementFamily> fam(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      OptimizerConfig c = cfg;
      c.aligned_theta = grid[k];
      fam[k] = minimize_all_families(aligned_mixture(grid[k]).rho, MeasureSpec::geometric(), c).optimal;
    }
    // Interior labels: II strictly below the switch, III strictly above.
    double last_ii = -1.0, first_iii = 10.0;
    bool clean = true;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!interior(grid[k])) continue;
      if (fam[k] == MeasurementFamily::type_ii) last_ii = std::max(last_ii, grid[k]);
      else if (fam[k] == MeasurementFamily::type_iii) first_iii = std::min(first_iii, grid[k]);
      else clean = false;
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!interior(grid[k])) continue;
      if (fam[k] == MeasurementFamily::type_ii && grid[k] > first_iii) clean = false;
    }
    const bool located = last_ii >= tc - step && first_iii <= tc + step && first_iii > last_ii;
    report(2, "geometric-discord anchor", dev <= 1e-6 && clean && located,
           fmt("|I2(theta_c) - 2/9| = %.2e; II->III between %.4f pi and %.4f pi, theta_c = %.4f pi", dev,
               last_ii / kPi, first_iii / kPi, tc / kPi),
           t.seconds());
  }

  {  // 3
    Timer t;
    double dmax = 0.0, imax = 0.0;
    int errata = 0;
    for (const app::SweepRow& r : rows) {
      const double dd = std::abs(r.d.value - closed::d_closed(r.theta));
      const double di = std::abs(r.i2.value - closed::i2_closed(r.theta));
      if (dd > 1e-6 || di > 1e-6) {
        ++errata;
        std::printf("  errata theta=%.6f: D numeric %.12g closed %.12g; I2 numeric %.12g closed %.12g\n", r.theta,
                    r.d.value, closed::d_closed(r.theta), r.i2.value, closed::i2_closed(r.theta));
      }
      dmax = std::max(dmax, dd);
      imax = std::max(imax, di);
    }
    report(3, "closed-form cross-validation", errata == 0,
           fmt("max |D - d_closed| = %.2e, max |I2 - i2_closed| = %.2e, errata rows %.0f", dmax, imax, errata),
           sweep_seconds);
  }

  {  // 4
    Timer t;
    double worst = 0.0;
    std::string where;
    for (const app::SweepRow& r : rows) {
      const double expected = std::atan(std::pow(std::tan(r.theta / 2), 2));
      for (int m = 0; m < 3; ++m) {
        for (MeasurementFamily f : {MeasurementFamily::type_ii, MeasurementFamily::type_iii}) {
          const double dev = std::abs(detail(r, m).per_family.at(f).params.alpha - expected);
          if (dev > worst) {
            worst = dev;
            where = fmt("theta = %.4f pi", r.theta / kPi) + " " + kMeasureNames[m] + " " +
                    std::string(family_name(f));
          }
        }
      }
    }
    report(4, "minimizing-angle law", worst <= 1e-6,
           fmt("max |alpha - atan(tan^2(theta/2))| = %.2e over D, I1, I2 x {II, III}", worst) +
               (where.empty() ? "" : " at " + where),
           t.seconds());
  }

  {  // 5
    Timer t;
    bool d_ok = true;
    bool general_inside = false;
    bool outside_ok = true;
    std::string general_at;
    for (const app::SweepRow& r : rows) {
      if (!interior(r.theta)) continue;
      if (r.d.family != MeasurementFamily::type_iii) d_ok = false;
      const double x = r.theta / kPi;
      if (x > 0.19 && x < 0.24 && r.i1.family == MeasurementFamily::general) {
        const MeasurementParams& p = r.i1.params;
        const bool shape = std::abs(p.gamma) <= 1e-6 && p.beta > 1e-6 && p.beta < kPi / 4 - 1e-6 &&
                           !classify(full_basis(p)).parity_preserving;
        if (shape) {
          general_inside = true;
          general_at += fmt(" %.3f", x);
        }
      }
      if ((x < 0.17 || x > 0.26) && r.i1.family != MeasurementFamily::type_ii &&
          r.i1.family != MeasurementFamily::type_iii) {
        outside_ok = false;
      }
    }
    report(5, "measurement-type phenomenology", d_ok && general_inside && outside_ok,
           std::string("D TYPE_III on interior: ") + (d_ok ? "yes" : "no") +
               "; I1 GENERAL (gamma=0, 0<beta<pi/4) at theta/pi =" + (general_at.empty() ? " none" : general_at) +
               "; I1 II/III outside guard band: " + (outside_ok ? "yes" : "no"),
           t.seconds());
  }

  {  // 6
    Timer t;
    double worst = 0.0;
    std::string values;
    for (const MeasureSpec& m : {MeasureSpec::discord(), MeasureSpec::info_deficit(), MeasureSpec::geometric()}) {
      const double v = minimize_all_families(bell_anchor(), m, cfg).best_value;
      worst = std::max(worst, std::abs(v - 1.0));
      values += " " + m.name + fmt("=%.12f", v);
    }
    report(6, "Bell normalization", worst <= 1e-6, "values" + values + fmt(", max dev %.2e", worst), t.seconds());
  }

  {  // 7
    Timer t;
    // Blind minimization (no analytic seed).
    std::vector<double> lx, ld, li, li_far, lx_far;
    double pref_small = 0.0, pref_large = 0.0;
    const std::vector<double> grid = linspace(std::log(0.005), std::log(0.05), 10);
    for (double lt : grid) {
      const double theta = std::exp(lt);
      const DensityMatrix near0 = aligned_mixture(theta).rho;
      const double d = minimize_all_families(near0, MeasureSpec::discord(), cfg).best_value;
      const double i2 = minimize_all_families(near0, MeasureSpec::geometric(), cfg).best_value;
      lx.push_back(lt);
      ld.push_back(std::log(d));
      li.push_back(std::log(i2));
      pref_small += std::log(i2) - 4 * lt;
      const DensityMatrix near_half = aligned_mixture(kPi / 2 - theta).rho;
      const double i2_far = minimize_all_families(near_half, MeasureSpec::geometric(), cfg).best_value;
      pref_large += std::log(i2_far) - 4 * lt;
    }
    pref_small = std::exp(pref_small / static_cast<double>(grid.size()));
    pref_large = std::exp(pref_large / static_cast<double>(grid.size()));
    const double sd = fit_slope(lx, ld), si = fit_slope(lx, li);
    const bool ok = std::abs(sd - 2) <= 0.05 && std::abs(si - 4) <= 0.05 && std::abs(pref_small - 2) <= 0.2 &&
                    std::abs(pref_large - 0.5) <= 0.05;
    report(7, "asymptotic exponents", ok,
           fmt("slope log D = %.4f, slope log I2 = %.4f, I2/theta^4 -> %.4f, I2/(pi/2-theta)^4 -> %.4f", sd, si,
               pref_small, pref_large),
           t.seconds());
  }

  {  // 8
    Timer t;
    bool never_below = true;
    double worst_below = 0.0;
    int interior_points = 0;
    int strict[3] = {0, 0, 0};
    for (const app::SweepRow& r : rows) {
      if (!interior(r.theta)) continue;
      ++interior_points;
      for (int m = 0; m < 3; ++m) {
        const auto& fams = detail(r, m).per_family;
        const double spin = fams.at(MeasurementFamily::spin).value;
        const double general = fams.at(MeasurementFamily::general).value;
        if (spin < general) {
          never_below = false;
          worst_below = std::max(worst_below, general - spin);
        }
        if (spin > general + 1e-6) ++strict[m];
      }
    }
    const bool half = 2 * strict[0] >= interior_points && 2 * strict[1] >= interior_points &&
                      2 * strict[2] >= interior_points;
    report(8, "spin-measurement suboptimality", never_below && half,
           std::string("SPIN >= GENERAL everywhere: ") + (never_below ? "yes" : "no") +
               fmt(" (worst shortfall %.1e); SPIN - GENERAL > 1e-6 on D %.0f, I1 %.0f, I2 %.0f", worst_below,
                   strict[0], strict[1], strict[2]) +
               fmt(" of %.0f interior points", interior_points),
           t.seconds());
  }

  {  // 9
    Timer t;
    int optima = 0, skipped = 0;
    double max_res = 0.0, max_fd = 0.0, max_herm = 0.0, max_diag = 0.0;
    const MeasureSpec specs[3] = {MeasureSpec::discord(), MeasureSpec::info_deficit(), MeasureSpec::geometric()};
    for (const app::SweepRow& r : rows) {
      const DensityMatrix rho = aligned_mixture(r.theta).rho;
      for (int m = 0; m < 3; ++m) {
        const MeasureEvaluator ev(rho, specs[m]);
        for (const auto& [f, res] : detail(r, m).per_family) {
          if (!res.converged) {
            ++skipped;
            continue;
          }
          ++optima;
          const auto g = projected_residual(ev, f, res.params);
          double n = 0.0;
          for (double x : g) n += x * x;
          max_res = std::max(max_res, std::sqrt(n));
          const std::vector<double> x = to_coordinates(f, res.params);
          for (double v : fd_gradient(ev, f, x, 1e-6)) max_fd = std::max(max_fd, std::abs(v));
          const ComplexMatrix u = measurement_unitary(res.params);
          const ComplexMatrix delta = ev.residual(u).delta;
          max_herm = std::max(max_herm, max_abs(delta + delta.adjoint()));
          const ComplexMatrix in_basis = u.adjoint() * delta * u;
          for (std::size_t k = 0; k < 3; ++k) max_diag = std::max(max_diag, std::abs(in_basis(k, k)));
        }
      }
    }
    const bool ok = max_res < 1e-8 && max_fd < 1e-5 && max_herm <= 1e-10 && max_diag <= 1e-10;
    report(9, "stationarity certificates", ok,
           fmt("%.0f converged optima (%.0f unconverged family runs skipped): max projected residual %.2e, max FD "
               "gradient %.2e",
               optima, skipped, max_res, max_fd) +
               fmt(", max |Delta + Delta^+| %.2e, max measured diagonal %.2e", max_herm, max_diag),
           t.seconds());
  }

  {  // 10
    Timer t;
    sample::Rng rng(20120601);
    std::vector<double> d(9);
    for (std::size_t k = 0; k < 9; ++k) {
      d[k] = ((k / 3) % 2 == 1) != ((k % 3) % 2 == 1) ? -1.0 : 1.0;
    }
    const ComplexMatrix p = ComplexMatrix::diagonal(d);
    double max_comm = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const DensityMatrix raw = sample::density(rng, {3, 3}, 1 + static_cast<std::size_t>(k % 9));
      const ComplexMatrix rho = (raw.matrix() + p * raw.matrix() * p) * 0.5;
      const MeasurementParams mp = (k % 2 == 0) ? sample::type_ii_params(rng) : sample::type_iii_params(rng);
      const ComplexMatrix after = measure_oracle(rho, 3, measurement_unitary(mp));
      max_comm = std::max(max_comm, frobenius_norm(after * p - p * after));
    }
    double max_sum = 0.0, max_coplanar = 0.0, max_dot = -1.0, max_l2 = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const auto v = diagram_oracle(measurement_unitary(sample::general_params(rng)));
      Vec3 sum{};
      for (const Vec3& x : v)
        for (int mu = 0; mu < 3; ++mu) sum[mu] += x[mu];
      const double det = v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
                         v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
                         v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
      max_sum = std::max(max_sum, std::sqrt(dot(sum, sum)));
      max_coplanar = std::max(max_coplanar, std::abs(det));
      max_dot = std::max({max_dot, dot(v[0], v[1]), dot(v[0], v[2]), dot(v[1], v[2])});
      max_l2 = std::max(max_l2, dot(v[0], v[0]) + dot(v[1], v[1]) + dot(v[2], v[2]));
    }
    const bool ok = max_comm <= 1e-10 && max_sum <= 1e-10 && max_coplanar <= 1e-10 && max_dot <= 1e-10 &&
                    max_l2 <= 8.0 / 3.0 + 1e-9;
    report(10, "parity propagation and diagram properties", ok,
           fmt("max ||[rho', P]|| = %.2e; max |sum| = %.2e, max |det| = %.2e, max dot = %.2e", max_comm, max_sum,
               max_coplanar, max_dot) +
               fmt(", max L_S^2 = %.6f", max_l2),
           t.seconds());
  }

  {  // 11
    Timer t;
    const auto y = diagram_oracle(intrinsic_unitary(0.5 * std::asin(1.0 / 3.0), kPi / 4, 0.0));
    const double l2 = dot(y[0], y[0]) + dot(y[1], y[1]) + dot(y[2], y[2]);
    const auto z = diagram_oracle(intrinsic_unitary(kPi / 4, 0.0, 0.0));
    double zmax = 0.0;
    for (const Vec3& v : z)
      for (double c : v) zmax = std::max(zmax, std::abs(c));
    report(11, "measurement-geometry anchors", std::abs(l2 - 8.0 / 3.0) <= 1e-10 && zmax <= 1e-10,
           fmt("L_S^2 at sin2a = 1/3 = %.15f (8/3 = %.15f); max |<S>| at alpha = pi/4 = %.1e", l2, 8.0 / 3.0, zmax),
           t.seconds());
  }

  {  // 12
    Timer t;
    bool ok = true;
    std::string detail_text;
    for (double x : {0.15, 0.3}) {
      const double theta = x * kPi;
      // |Ψ₊⟩ on four sites, reduced to sites (0, 1) as M M† with M = Ψ reshaped 9 x 9.
      const StateVector up = coherent_state(kSpinOne, theta), down = coherent_state(kSpinOne, -theta);
      StateVector psi = kron(kron(up, up), kron(up, up));
      const StateVector other = kron(kron(down, down), kron(down, down));
      for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += other[i];
      const double nrm = norm(psi);
      ComplexMatrix mm(9, 9);
      for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) mm(i, j) = psi[i * 9 + j] / nrm;
      const DensityMatrix pair(mm * mm.adjoint(), {3, 3});
      const double lib_dev =
          frobenius_distance(pair.matrix(), reduce_pair(fixed_parity_state(4, theta, 1), 4, 0, 1).matrix());
      OptimizerConfig hinted = cfg;
      hinted.aligned_theta = theta;
      const double bound = 5 * std::pow(std::cos(theta), 4);
      double worst = 0.0;
      for (const MeasureSpec& m : {MeasureSpec::discord(), MeasureSpec::info_deficit(), MeasureSpec::geometric()}) {
        const double vp = minimize_all_families(pair, m, cfg).best_value;
        const double vr = minimize_all_families(aligned_mixture(theta).rho, m, hinted).best_value;
        worst = std::max(worst, std::abs(vp - vr));
      }
      ok = ok && worst <= bound && lib_dev <= 1e-12;
      detail_text += fmt("theta = %.2f pi: max diff %.4f <= %.4f (reduce_pair dev %.1e); ", x, worst, bound, lib_dev);
    }
    report(12, "chain consistency", ok, detail_text, t.seconds());
  }

  std::printf("%s: %d of 12 criteria failed\n", g_failed == 0 ? "ALL PASS" : "FAILURES", g_failed);
  return g_failed == 0 ? 0 : 1;
}
