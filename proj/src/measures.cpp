#include "qd/measures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qd/eig.hpp"
#include "qd/error.hpp"
#include "qd/kernels.hpp"

namespace qd {

namespace {

constexpr std::size_t kQutrit = 3;
constexpr double kParityTol = 1e-10;

double clamp_eigenvalue(double x) { return (x < 0.0 && x >= -kClampBelow) ? 0.0 : x; }

double neg_xlog2x(double x) {
  x = clamp_eigenvalue(x);
  return x > 0.0 ? -x * std::log2(x) : 0.0;
}

double clamp_measure(double v) { return (v < 0.0 && v >= -kClampBelow) ? 0.0 : v; }

void require_qutrit_b(const DensityMatrix& rho, const char* what) {
  if (rho.dims().b != kQutrit) {
    throw DimensionError(std::string(what) + ": measured subsystem must have d_B = 3, got " +
                         std::to_string(rho.dims().b));
  }
}

// (I_A ⊗ V) M, V acting on the fast index.
ComplexMatrix local_left(const ComplexMatrix& v, const ComplexMatrix& m, std::size_t dim_a) {
  const std::size_t db = v.rows();
  const std::size_t n = m.cols();
  if (m.rows() != dim_a * db) throw DimensionError("local operator: dimension mismatch");
  const auto& k = kernels::active();
  ComplexMatrix out(m.rows(), n);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t i = 0; i < db; ++i) {
      cplx* dst = out.data() + (a * db + i) * n;
      for (std::size_t j = 0; j < db; ++j) {
        const cplx vij = v(i, j);
        if (vij == cplx{}) continue;
        k.caxpy(n, vij, m.data() + (a * db + j) * n, dst);
      }
    }
  return out;
}

// L M L† with L = I_A ⊗ V.
ComplexMatrix local_conjugate(const ComplexMatrix& m, std::size_t dim_a, const ComplexMatrix& v) {
  const ComplexMatrix x = local_left(v, m, dim_a);
  return local_left(v, x.adjoint(), dim_a).adjoint();
}

// R_ij[a, a'] = M[(a, i), (a', j)].
ComplexMatrix block(const ComplexMatrix& m, std::size_t dim_a, std::size_t i, std::size_t j) {
  ComplexMatrix r(dim_a, dim_a);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t ap = 0; ap < dim_a; ++ap) r(a, ap) = m(a * kQutrit + i, ap * kQutrit + j);
  return r;
}

// f′ on the support, zero on eigenvalues at or below the cutoff.
ComplexMatrix support_fprime(const ComplexMatrix& m, const EntropyFunctional& f,
                             std::vector<StateVector>* kernel = nullptr,
                             double cutoff = kSupportCutoff) {
  const HermitianEig eig = hermitian_eig(m);
  if (kernel != nullptr) {
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k)
      if (eig.eigenvalues[k] <= cutoff) kernel->push_back(eig.eigenvectors.column(k));
  }
  return matrix_func(eig, [&](double x) { return x > cutoff ? f.fprime(x) : 0.0; });
}


bool has_weight_on(const ComplexMatrix& rho, const std::vector<StateVector>& kernel) {
  for (const StateVector& w : kernel)
    if (norm(rho * w) > 1e-8) return true;
  return false;
}

StationarityResidual make_residual(ComplexMatrix delta, bool overlap) {
  const double n = frobenius_norm(delta);
  return StationarityResidual{std::move(delta), n, overlap};
}

ComplexMatrix projected_state(const DensityMatrix& rho, const MeasurementBasis& b) {
  const std::size_t da = rho.dims().a;
  ComplexMatrix t = to_measured_frame(rho.matrix(), da, b.unitary());
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c)
      if (r % kQutrit != c % kQutrit) t(r, c) = 0.0;
  return from_measured_frame(t, da, b.unitary());
}

bool is_linear(const EntropyFunctional& f) { return f.name == "linear"; }

}  // namespace

EntropyFunctional von_neumann() {
  return EntropyFunctional{"von_neumann", neg_xlog2x, [](double x) {
                             return -std::log2(x) - std::numbers::log2e;
                           }};
}

EntropyFunctional linear_entropy() {
  return EntropyFunctional{"linear", [](double x) { return x * (1.0 - x); },
                           [](double x) { return 1.0 - 2.0 * x; }};
}

ComplexMatrix to_measured_frame(const ComplexMatrix& m, std::size_t dim_a, const ComplexMatrix& u) {
  return local_conjugate(m, dim_a, u.adjoint());
}

ComplexMatrix from_measured_frame(const ComplexMatrix& m, std::size_t dim_a,
                                  const ComplexMatrix& u) {
  return local_conjugate(m, dim_a, u);
}

DensityMatrix apply_measurement(const DensityMatrix& rho, const MeasurementBasis& b) {
  require_qutrit_b(rho, "apply_measurement");
  return DensityMatrix(projected_state(rho, b), rho.dims());
}

double vn_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double x : hermitian_eigenvalues(rho.matrix())) s += neg_xlog2x(x);
  return s;
}

double f_entropy(const DensityMatrix& rho, const EntropyFunctional& f) {
  double s = 0.0;
  for (double x : hermitian_eigenvalues(rho.matrix())) s += f.f(clamp_eigenvalue(x));
  return s;
}

MeasureAtM discord_given(const DensityMatrix& rho, const MeasurementBasis& b) {
  DensityMatrix rp = apply_measurement(rho, b);
  const double after = vn_entropy(rp) - vn_entropy(partial_trace(rp, Subsystem::B));
  const double before = vn_entropy(rho) - vn_entropy(partial_trace(rho, Subsystem::B));
  return MeasureAtM{clamp_measure(after - before), std::move(rp), b};
}

MeasureAtM deficit_given(const DensityMatrix& rho, const MeasurementBasis& b,
                         const EntropyFunctional& f) {
  DensityMatrix rp = apply_measurement(rho, b);
  const double v = f_entropy(rp, f) - f_entropy(rho, f);
  return MeasureAtM{clamp_measure(v), std::move(rp), b};
}

MeasureAtM geometric_discord_given(const DensityMatrix& rho, const MeasurementBasis& b) {
  DensityMatrix rp = apply_measurement(rho, b);
  const double purity = trace(rho.matrix() * rho.matrix()).real();
  const double purity_after = trace(rp.matrix() * rp.matrix()).real();
  return MeasureAtM{clamp_measure(2.0 * (purity - purity_after)), std::move(rp), b};
}

StationarityResidual stationarity_f(const DensityMatrix& rho, const MeasurementBasis& b,
                                    const EntropyFunctional& f) {
  require_qutrit_b(rho, "stationarity_f");
  const ComplexMatrix rp = projected_state(rho, b);
  std::vector<StateVector> kernel;
  const ComplexMatrix fp = support_fprime(rp, f, &kernel);
  ComplexMatrix delta = partial_trace(commutator(fp, rho.matrix()), rho.dims(), Subsystem::B);
  return make_residual(std::move(delta), has_weight_on(rho.matrix(), kernel));
}

StationarityResidual stationarity_D(const DensityMatrix& rho, const MeasurementBasis& b) {
  require_qutrit_b(rho, "stationarity_D");
  const EntropyFunctional vn = von_neumann();
  const ComplexMatrix rp = projected_state(rho, b);
  std::vector<StateVector> kernel;
  const ComplexMatrix fp = support_fprime(rp, vn, &kernel);
  ComplexMatrix delta = partial_trace(commutator(fp, rho.matrix()), rho.dims(), Subsystem::B);

  const ComplexMatrix rho_b = partial_trace(rho.matrix(), rho.dims(), Subsystem::B);
  const ComplexMatrix rp_b = partial_trace(rp, rho.dims(), Subsystem::B);
  std::vector<StateVector> kernel_b;
  const ComplexMatrix fp_b = support_fprime(rp_b, vn, &kernel_b);
  delta -= commutator(fp_b, rho_b);
  const bool overlap = has_weight_on(rho.matrix(), kernel) || has_weight_on(rho_b, kernel_b);
  return make_residual(std::move(delta), overlap);
}

bool parity_invariance_check(const DensityMatrix& rho, const ParityOperator& p) {
  if (p.matrix.rows() != rho.dim()) throw DimensionError("parity_invariance_check: size mismatch");
  return frobenius_norm(commutator(rho.matrix(), p.matrix)) < kParityTol;
}

MeasureSpec MeasureSpec::discord() {
  return MeasureSpec{MeasureKind::discord, von_neumann(), 1.0, "D"};
}

MeasureSpec MeasureSpec::info_deficit() {
  return MeasureSpec{MeasureKind::deficit, von_neumann(), 1.0, "I1"};
}

MeasureSpec MeasureSpec::geometric() {
  return MeasureSpec{MeasureKind::deficit, linear_entropy(), 2.0, "I2"};
}

MeasureSpec MeasureSpec::generic(EntropyFunctional f, double scale) {
  std::string name = "If[" + f.name + "]";
  return MeasureSpec{MeasureKind::deficit, std::move(f), scale, std::move(name)};
}

MeasureEvaluator::MeasureEvaluator(const DensityMatrix& rho, MeasureSpec spec)
    : rho_(rho), spec_(std::move(spec)) {
  require_qutrit_b(rho_, "MeasureEvaluator");
  rho_b_ = partial_trace(rho_.matrix(), rho_.dims(), Subsystem::B);
  is_linear_ = spec_.kind == MeasureKind::deficit && is_linear(spec_.f);
  if (spec_.kind == MeasureKind::discord) {
    baseline_ = vn_entropy(rho_) - vn_entropy(DensityMatrix(rho_b_));
  } else if (is_linear_) {
    baseline_ = trace(rho_.matrix() * rho_.matrix()).real();
  } else {
    baseline_ = f_entropy(rho_, spec_.f);
  }
}

double MeasureEvaluator::value(const ComplexMatrix& u) const {
  const std::size_t da = rho_.dims().a;
  const ComplexMatrix t = to_measured_frame(rho_.matrix(), da, u);
  if (is_linear_) {
    // Tr ρ′² = Σ_m ‖C_m‖², no spectra needed.
    const auto& k = kernels::active();
    double purity_after = 0.0;
    for (std::size_t m = 0; m < kQutrit; ++m) {
      const ComplexMatrix c = block(t, da, m, m);
      purity_after += k.norm_sq(c.size(), c.data());
    }
    return spec_.scale * (baseline_ - purity_after);
  }

  double joint = 0.0;
  double local = 0.0;
  for (std::size_t m = 0; m < kQutrit; ++m) {
    const ComplexMatrix c = block(t, da, m, m);
    for (double x : hermitian_eigenvalues(c)) joint += spec_.f.f(clamp_eigenvalue(x));
    if (spec_.kind == MeasureKind::discord) local += neg_xlog2x(trace(c).real());
  }
  if (spec_.kind == MeasureKind::discord) return joint - local - baseline_;
  return spec_.scale * (joint - baseline_);
}

StationarityResidual MeasureEvaluator::residual(const ComplexMatrix& u) const {
  const std::size_t da = rho_.dims().a;
  const ComplexMatrix t = to_measured_frame(rho_.matrix(), da, u);

  std::array<ComplexMatrix, kQutrit> fp{ComplexMatrix(da, da), ComplexMatrix(da, da), ComplexMatrix(da, da)};
  std::array<double, kQutrit> fp_local{};
  for (std::size_t m = 0; m < kQutrit; ++m) {
    const ComplexMatrix c = block(t, da, m, m);
    // Each block is diagonalized on its own, so the support is judged
    // relative to its weight: a nearly unoccupied outcome still contributes
    // its p log p singularity to the gradient.
    const double p = trace(c).real();
    if (p <= 0.0) continue;
    fp[m] = support_fprime(c, spec_.f, nullptr, kSupportCutoff * p);
    fp_local[m] = spec_.f.fprime(p);
  }

  // In the measured frame Δ_ij = Tr[(f′(C_i) − f′(C_j)) R_ij], minus the local
  // term (f′(p_i) − f′(p_j)) Tr R_ij for the discord.
  ComplexMatrix delta(kQutrit, kQutrit);
  for (std::size_t i = 0; i < kQutrit; ++i)
    for (std::size_t j = 0; j < kQutrit; ++j) {
      if (i == j) continue;
      const ComplexMatrix r = block(t, da, i, j);
      cplx v = trace((fp[i] - fp[j]) * r);
      if (spec_.kind == MeasureKind::discord) v -= (fp_local[i] - fp_local[j]) * trace(r);
      delta(i, j) = spec_.scale * v;
    }
  ComplexMatrix standard = u * delta * u.adjoint();
  return make_residual(std::move(standard), false);
}

}  // namespace qd
