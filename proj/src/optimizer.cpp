#include "qd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "qd/eig.hpp"
#include "qd/error.hpp"

namespace qd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAtBound = 1e-12;

double euclid(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double fold_reflect(double x, double lo, double hi) {
  const double len = hi - lo;
  double y = std::fmod(x - lo, 2.0 * len);
  if (y < 0.0) y += 2.0 * len;
  if (y > len) y = 2.0 * len - y;
  return lo + y;
}

double fold_periodic(double x, double lo, double hi) {
  const double period = hi - lo;
  double y = std::fmod(x - lo, period);
  if (y < 0.0) y += period;
  return lo + y;
}

// Drops gradient components that point out of the box at an active bound.
void project_on_box(const std::vector<ParamBound>& box, std::span<const double> x,
                    std::span<double> g) {
  for (std::size_t j = 0; j < box.size(); ++j) {
    if (box[j].periodic) continue;
    if (x[j] <= box[j].lo + kAtBound && g[j] > 0.0) g[j] = 0.0;
    if (x[j] >= box[j].hi - kAtBound && g[j] < 0.0) g[j] = 0.0;
  }
}

double value_at(const MeasureEvaluator& eval, MeasurementFamily f, std::span<const double> x) {
  return eval.value(measurement_unitary(to_params(f, x)));
}

}  // namespace

std::string_view family_name(MeasurementFamily f) noexcept {
  switch (f) {
    case MeasurementFamily::spin:
      return "SPIN";
    case MeasurementFamily::type_ii:
      return "TYPE_II";
    case MeasurementFamily::type_iii:
      return "TYPE_III";
    case MeasurementFamily::general:
      return "GENERAL";
  }
  return "?";
}

std::optional<MeasurementFamily> parse_family(std::string_view s) noexcept {
  if (s == "SPIN" || s == "spin") return MeasurementFamily::spin;
  if (s == "TYPE_II" || s == "ii" || s == "II") return MeasurementFamily::type_ii;
  if (s == "TYPE_III" || s == "iii" || s == "III") return MeasurementFamily::type_iii;
  if (s == "GENERAL" || s == "general") return MeasurementFamily::general;
  return std::nullopt;
}

std::size_t free_params(MeasurementFamily f) noexcept {
  switch (f) {
    case MeasurementFamily::spin:
    case MeasurementFamily::type_ii:
      return 2;
    case MeasurementFamily::type_iii:
      return 3;
    case MeasurementFamily::general:
      return 6;
  }
  return 0;
}

std::vector<ParamBound> family_box(MeasurementFamily f) {
  const ParamBound alpha{0.0, kPi / 4, false};
  switch (f) {
    case MeasurementFamily::spin:
      return {{0.0, kPi, false}, {0.0, 2 * kPi, true}};
    case MeasurementFamily::type_ii:
      // e^{-iπS_z} only rephases definite-parity states: φ has period π.
      return {alpha, {0.0, kPi, true}};
    case MeasurementFamily::type_iii:
      // γ → γ + π or φ → φ + π swaps the parity pair: same projector set.
      return {alpha, {-kPi / 2, kPi / 2, true}, {0.0, kPi, true}};
    case MeasurementFamily::general:
      return {alpha,
              alpha,
              {-kPi / 2, kPi / 2, false},
              {0.0, 2 * kPi, true},
              {0.0, kPi, false},
              {0.0, 2 * kPi, true}};
  }
  return {};
}

MeasurementParams to_params(MeasurementFamily f, std::span<const double> x) {
  if (x.size() != free_params(f)) throw DimensionError("to_params: wrong coordinate count");
  switch (f) {
    case MeasurementFamily::spin:
      return MeasurementParams{0.0, 0.0, 0.0, x[1], x[0], 0.0};
    case MeasurementFamily::type_ii:
      return MeasurementParams{x[0], 0.0, 0.0, x[1], 0.0, 0.0};
    case MeasurementFamily::type_iii:
      return MeasurementParams{x[0], kPi / 4, x[1], x[2], 0.0, 0.0};
    case MeasurementFamily::general:
      return MeasurementParams{x[0], x[1], x[2], x[3], x[4], x[5]};
  }
  return {};
}

std::vector<double> to_coordinates(MeasurementFamily f, const MeasurementParams& p) {
  switch (f) {
    case MeasurementFamily::spin:
      return {p.theta_r, p.psi};
    case MeasurementFamily::type_ii:
      return {p.alpha, p.psi};
    case MeasurementFamily::type_iii:
      return {p.alpha, p.gamma, p.psi};
    case MeasurementFamily::general:
      return {p.alpha, p.beta, p.gamma, p.psi, p.theta_r, p.phi_r};
  }
  return {};
}

void fold_into_box(MeasurementFamily f, std::span<double> x) {
  const auto box = family_box(f);
  for (std::size_t j = 0; j < box.size(); ++j) {
    x[j] = box[j].periodic ? fold_periodic(x[j], box[j].lo, box[j].hi)
                           : fold_reflect(x[j], box[j].lo, box[j].hi);
  }
  // Canonical γ interval is (−π/2, π/2].
  if (f == MeasurementFamily::type_iii && x[1] <= -kPi / 2 + kAtBound) x[1] = kPi / 2;
}

int OptimizerConfig::n_per_axis(MeasurementFamily f) const noexcept {
  switch (f) {
    case MeasurementFamily::spin:
      return n_spin;
    case MeasurementFamily::type_ii:
      return n_type_ii;
    case MeasurementFamily::type_iii:
      return n_type_iii;
    case MeasurementFamily::general:
      return n_general;
  }
  return 2;
}

std::vector<MeasurementParams> seed_grid(MeasurementFamily f, int n_per_axis,
                                         std::optional<double> aligned_theta) {
  if (n_per_axis < 2) throw DomainError("seed_grid: n_per_axis must be at least 2");
  const auto box = family_box(f);
  const std::size_t dim = box.size();
  const auto n = static_cast<std::size_t>(n_per_axis);

  std::vector<MeasurementParams> seeds;
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> x(dim);
  for (;;) {
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& b = box[j];
      const double k = static_cast<double>(idx[j]);
      x[j] = b.periodic ? b.lo + (b.hi - b.lo) * k / static_cast<double>(n)
                        : b.lo + (b.hi - b.lo) * k / static_cast<double>(n - 1);
    }
    seeds.push_back(to_params(f, x));
    std::size_t j = 0;
    while (j < dim && ++idx[j] == n) idx[j++] = 0;
    if (j == dim) break;
  }

  if (aligned_theta) {
    const double t = std::tan(*aligned_theta / 2);
    const double alpha = std::atan(t * t);
    for (double phi : {0.0, kPi / 2}) {
      switch (f) {
        case MeasurementFamily::spin:
          break;
        case MeasurementFamily::type_ii:
          seeds.push_back(MeasurementParams{alpha, 0.0, 0.0, phi, 0.0, 0.0});
          break;
        case MeasurementFamily::type_iii:
          seeds.push_back(MeasurementParams{alpha, kPi / 4, 0.0, phi, 0.0, 0.0});
          break;
        case MeasurementFamily::general:
          seeds.push_back(MeasurementParams{alpha, 0.0, 0.0, phi, 0.0, 0.0});
          seeds.push_back(MeasurementParams{alpha, kPi / 4, 0.0, phi, 0.0, 0.0});
          break;
      }
    }
  }
  return seeds;
}

std::vector<ComplexMatrix> family_generators(MeasurementFamily f, const MeasurementParams& p,
                                             double step) {
  std::vector<double> x = to_coordinates(f, p);
  const ComplexMatrix u_adj = measurement_unitary(p).adjoint();
  std::vector<ComplexMatrix> gens;
  gens.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double keep = x[j];
    x[j] = keep + step;
    const ComplexMatrix up = measurement_unitary(to_params(f, x));
    x[j] = keep - step;
    const ComplexMatrix down = measurement_unitary(to_params(f, x));
    x[j] = keep;
    gens.push_back((up - down) * (1.0 / (2.0 * step)) * u_adj);
  }
  return gens;
}

std::vector<double> projected_residual(const MeasureEvaluator& eval, MeasurementFamily f,
                                       const MeasurementParams& p) {
  const StationarityResidual r = eval.residual(measurement_unitary(p));
  const auto gens = family_generators(f, p);
  std::vector<double> g(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) g[j] = trace(gens[j] * r.delta).real();
  const std::vector<double> x = to_coordinates(f, p);
  project_on_box(family_box(f), x, g);
  return g;
}

std::vector<double> fd_gradient(const MeasureEvaluator& eval, MeasurementFamily f,
                                std::span<const double> x, double step) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + step;
    const double up = value_at(eval, f, probe);
    probe[j] = x[j] - step;
    const double down = value_at(eval, f, probe);
    probe[j] = x[j];
    g[j] = (up - down) / (2.0 * step);
  }
  return g;
}

namespace {

struct GradientAt {
  std::vector<double> g;  // projected
  std::vector<bool> active;
  double norm = 0.0;
};

GradientAt analytic_gradient(const MeasureEvaluator& eval, MeasurementFamily f,
                             const std::vector<ParamBound>& box, std::span<const double> x) {
  const MeasurementParams p = to_params(f, x);
  const StationarityResidual r = eval.residual(measurement_unitary(p));
  const auto gens = family_generators(f, p);
  GradientAt out;
  out.g.resize(gens.size());
  out.active.assign(gens.size(), false);
  for (std::size_t j = 0; j < gens.size(); ++j) out.g[j] = trace(gens[j] * r.delta).real();
  std::vector<double> projected = out.g;
  project_on_box(box, x, projected);
  for (std::size_t j = 0; j < gens.size(); ++j) out.active[j] = projected[j] != out.g[j];
  out.g = std::move(projected);
  out.norm = euclid(out.g);
  return out;
}

// Newton direction on the free coordinates, with |λ| floored so that the
// step always descends.
std::vector<double> newton_direction(const MeasureEvaluator& eval, MeasurementFamily f,
                                     const std::vector<ParamBound>& box, std::span<const double> x,
                                     const GradientAt& grad, double h) {
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!grad.active[j]) free.push_back(j);
  std::vector<double> d(x.size(), 0.0);
  if (free.empty()) return d;

  const std::size_t k = free.size();
  ComplexMatrix hess(k, k);
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t j = free[c];
    probe[j] = x[j] + h;
    const auto up = analytic_gradient(eval, f, box, probe);
    probe[j] = x[j] - h;
    const auto down = analytic_gradient(eval, f, box, probe);
    probe[j] = x[j];
    for (std::size_t r = 0; r < k; ++r) hess(r, c) = (up.g[free[r]] - down.g[free[r]]) / (2.0 * h);
  }
  hess = (hess + hess.adjoint()) * 0.5;
  const HermitianEig eig = hermitian_eig(hess);
  double scale = 0.0;
  for (double l : eig.eigenvalues) scale = std::max(scale, std::abs(l));
  const double floor = std::max(1e-10 * scale, 1e-14);
  for (std::size_t m = 0; m < k; ++m) {
    double proj = 0.0;
    for (std::size_t r = 0; r < k; ++r) proj += eig.eigenvectors(r, m).real() * grad.g[free[r]];
    const double coef = -proj / std::max(std::abs(eig.eigenvalues[m]), floor);
    for (std::size_t r = 0; r < k; ++r) d[free[r]] += coef * eig.eigenvectors(r, m).real();
  }
  return d;
}

// Same projector set, tidier angles: merges the z rotations at the poles of
// θ_r and snaps coordinates sitting on a periodic seam.
MeasurementParams canonical(MeasurementFamily f, MeasurementParams p) {
  constexpr double kSnap = 1e-9;
  if (f == MeasurementFamily::general) {
    if (p.theta_r < kSnap) {
      p.psi += p.phi_r;
      p.phi_r = 0.0;
      p.theta_r = 0.0;
    } else if (p.theta_r > kPi - kSnap) {
      p.psi -= p.phi_r;
      p.phi_r = 0.0;
      p.theta_r = kPi;
    }
  }
  const auto box = family_box(f);
  std::vector<double> x = to_coordinates(f, p);
  fold_into_box(f, x);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (box[j].periodic && x[j] > box[j].hi - kSnap) x[j] = box[j].lo;
    if (std::abs(x[j]) < 1e-15) x[j] = 0.0;
  }
  return to_params(f, x);
}

}  // namespace

RefineOutcome refine(const MeasureEvaluator& eval, MeasurementFamily f,
                     const MeasurementParams& start, const OptimizerConfig& cfg) {
  const auto box = family_box(f);
  std::vector<double> x = to_coordinates(f, start);
  fold_into_box(f, x);
  double fx = value_at(eval, f, x);
  double eta = cfg.initial_step;

  RefineOutcome out;
  out.trace.push_back({0, fx});
  std::vector<double> trial(x.size());
  GradientAt grad = analytic_gradient(eval, f, box, x);
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    if (grad.norm < cfg.polish_tol) break;

    bool accepted = false;
    if (grad.norm < cfg.newton_switch) {
      // Near log-type kinks the curvature varies on the scale of the offset,
      // so the difference step shrinks with the gradient.
      const double h = std::clamp(100.0 * grad.norm, 1e-9, cfg.hessian_step);
      const auto d = newton_direction(eval, f, box, x, grad, h);
      const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(fx));
      for (double t = 1.0; t > 1e-3 && !accepted; t *= 0.5) {
        for (std::size_t j = 0; j < x.size(); ++j) trial[j] = x[j] + t * d[j];
        fold_into_box(f, trial);
        const double ft = value_at(eval, f, trial);
        if (ft > fx + slack) continue;
        GradientAt gt = analytic_gradient(eval, f, box, trial);
        if (ft < fx || gt.norm < grad.norm) {
          x = trial;
          fx = std::min(fx, ft);
          grad = std::move(gt);
          accepted = true;
        }
      }
    }

    // Converged and Newton no longer improves: stop at the noise floor.
    if (!accepted && grad.norm < cfg.tol) break;

    // Gradient step: shrink until the value decreases; give up once the
    // step is negligible.
    while (!accepted) {
      if (eta * grad.norm < cfg.min_step) break;
      for (std::size_t j = 0; j < x.size(); ++j) trial[j] = x[j] - eta * grad.g[j];
      fold_into_box(f, trial);
      const double ft = value_at(eval, f, trial);
      if (ft < fx) {
        x = trial;
        fx = ft;
        eta *= cfg.grow;
        grad = analytic_gradient(eval, f, box, x);
        accepted = true;
      } else {
        eta *= cfg.shrink;
      }
    }
    if (!accepted) break;
    out.trace.push_back({it + 1, fx});
  }

  out.params = to_params(f, x);
  out.value = fx;
  out.iterations = it;
  out.budget_exhausted = it >= cfg.max_iter;
  std::vector<double> g = fd_gradient(eval, f, x, cfg.fd_step);
  project_on_box(box, x, g);
  out.gradient_norm = euclid(g);
  out.residual_norm = grad.norm;
  return out;
}

OptimizationResult minimize(const DensityMatrix& rho, const MeasureSpec& measure,
                            MeasurementFamily f, const OptimizerConfig& cfg,
                            std::span<const MeasurementParams> extra_seeds) {
  const MeasureEvaluator eval(rho, measure);
  const std::vector<MeasurementParams> grid = seed_grid(f, cfg.n_per_axis(f), std::nullopt);
  std::vector<MeasurementParams> always(extra_seeds.begin(), extra_seeds.end());
  if (cfg.aligned_theta) {
    const auto analytic = seed_grid(f, 2, cfg.aligned_theta);
    const std::size_t plain = seed_grid(f, 2).size();
    always.insert(always.end(), analytic.begin() + static_cast<std::ptrdiff_t>(plain),
                  analytic.end());
  }

  std::vector<double> seed_values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    seed_values[i] = eval.value(measurement_unitary(grid[i]));
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return seed_values[a] < seed_values[b]; });

  std::vector<MeasurementParams> starts;
  for (const auto& s : always) {
    std::vector<double> x = to_coordinates(f, s);
    fold_into_box(f, x);
    starts.push_back(to_params(f, x));
  }
  const std::size_t top =
      std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(cfg.refine_top, 1)));
  for (std::size_t i = 0; i < top; ++i) starts.push_back(grid[order[i]]);

  std::optional<RefineOutcome> best;
  auto consider = [&](RefineOutcome r) {
    if (!best || r.value < best->value - cfg.start_tie_tol) best = std::move(r);
  };
  for (const auto& s : starts) {
    consider(refine(eval, f, s, cfg));
  }

  OptimizationResult res;
  // The measures are nonnegative; rounding can leave them just below zero.
  res.value = (best->value < 0.0 && best->value > -kNegativeRounding) ? 0.0 : best->value;
  res.params = canonical(f, best->params);
  res.family = f;
  res.type = classify(full_basis(res.params));
  res.residual_norm = best->residual_norm;
  res.gradient_norm = best->gradient_norm;
  res.starts = static_cast<int>(grid.size() + always.size());
  res.converged = best->residual_norm < cfg.tol;
  res.trace = std::move(best->trace);
  return res;
}

FamilyComparison minimize_families(const DensityMatrix& rho, const MeasureSpec& measure,
                                   std::span<const MeasurementFamily> families,
                                   const OptimizerConfig& cfg) {
  if (families.empty()) throw DomainError("minimize_families: no family requested");
  std::vector<MeasurementFamily> ordered(families.begin(), families.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  FamilyComparison out;
  std::vector<MeasurementParams> warm;
  for (MeasurementFamily f : ordered) {
    OptimizationResult r = f == MeasurementFamily::general ? minimize(rho, measure, f, cfg, warm)
                                                           : minimize(rho, measure, f, cfg);
    warm.push_back(r.params);
    out.per_family.emplace(f, std::move(r));
  }

  out.best_value = out.per_family.begin()->second.value;
  for (const auto& [f, r] : out.per_family) out.best_value = std::min(out.best_value, r.value);
  const double tol = std::max(cfg.tie_tol, cfg.tie_rel_tol * std::abs(out.best_value));
  for (MeasurementFamily f : ordered) {
    if (out.per_family.at(f).value <= out.best_value + tol) out.ties.push_back(f);
  }
  out.optimal = out.ties.front();
  return out;
}

FamilyComparison minimize_all_families(const DensityMatrix& rho, const MeasureSpec& measure,
                                       const OptimizerConfig& cfg) {
  return minimize_families(rho, measure, kAllFamilies, cfg);
}

}  // namespace qd
