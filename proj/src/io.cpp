#include "qd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qd/error.hpp"

namespace qd::io {

namespace {

template <typename T>
T get_or_throw(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

std::vector<Coupling> couplings_from_json(const json& j, const char* axis) {
  std::vector<Coupling> out;
  if (!j.contains(axis)) return out;
  if (!j.at(axis).is_array()) throw ParseError(std::string("J.") + axis + " must be a list");
  for (const auto& e : j.at(axis)) {
    if (!e.is_array() || e.size() != 3) {
      throw ParseError(std::string("J.") + axis + " entries must be [i, j, value]");
    }
    try {
      out.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
    } catch (const json::exception& ex) {
      throw ParseError(std::string("J.") + axis + ": " + ex.what());
    }
  }
  return out;
}

json couplings_to_json(const std::vector<Coupling>& list) {
  json out = json::array();
  for (const auto& c : list) out.push_back({c.i, c.j, c.value});
  return out;
}

template <typename T>
void read_optional(const json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config key \"") + key + "\": " + e.what());
  }
}

}  // namespace

StateFile state_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("state file must be a JSON object");
  const auto dims = get_or_throw<std::vector<std::size_t>>(j, "dims");
  if (dims.size() != 2 || dims[0] == 0 || dims[1] == 0) {
    throw ParseError("\"dims\" must be two positive integers");
  }
  const json& entries = j.contains("matrix") ? j.at("matrix") : json();
  if (!entries.is_array()) throw ParseError("missing or non-list \"matrix\"");
  const std::size_t d = dims[0] * dims[1];
  if (entries.size() != d * d) {
    throw ParseError("\"matrix\" has " + std::to_string(entries.size()) + " entries, expected " +
                     std::to_string(d * d));
  }
  ComplexMatrix m(d, d);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("matrix entry " + std::to_string(k) + " is not [re, im]");
    }
    m(k / d, k % d) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  StateFile out{DensityMatrix(std::move(m), BipartiteDims{dims[0], dims[1]}), std::nullopt};
  if (j.contains("theta")) {
    if (!j.at("theta").is_number()) throw ParseError("\"theta\" must be a number");
    out.theta = j.at("theta").get<double>();
  }
  return out;
}

json state_to_json(const DensityMatrix& rho, std::optional<double> theta) {
  json entries = json::array();
  for (const cplx& z : rho.matrix().entries()) entries.push_back({z.real(), z.imag()});
  json j = {{"dims", {rho.dims().a, rho.dims().b}}, {"matrix", std::move(entries)}};
  if (theta) j["theta"] = *theta;
  return j;
}

XYZChainSpec chain_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("chain spec must be a JSON object");
  XYZChainSpec spec;
  spec.n = get_or_throw<std::size_t>(j, "n");
  if (j.contains("s")) {
    const double s = get_or_throw<double>(j, "s");
    try {
      spec.s = Spin::from_value(s);
    } catch (const DomainError& e) {
      throw ParseError(std::string("\"s\": ") + e.what());
    }
  }
  spec.b = j.contains("b") ? get_or_throw<std::vector<double>>(j, "b") : std::vector<double>(spec.n, 0.0);
  if (spec.b.size() != spec.n) throw ParseError("\"b\" must have one entry per site");
  if (j.contains("J")) {
    const json& c = j.at("J");
    if (!c.is_object()) throw ParseError("\"J\" must be an object");
    spec.jx = couplings_from_json(c, "x");
    spec.jy = couplings_from_json(c, "y");
    spec.jz = couplings_from_json(c, "z");
    spec.jxy = couplings_from_json(c, "xy");
  }
  return spec;
}

json chain_to_json(const XYZChainSpec& spec) {
  json c = {{"x", couplings_to_json(spec.jx)},
            {"y", couplings_to_json(spec.jy)},
            {"z", couplings_to_json(spec.jz)}};
  if (!spec.jxy.empty()) c["xy"] = couplings_to_json(spec.jxy);
  return {{"n", spec.n}, {"s", spec.s.value()}, {"b", spec.b}, {"J", std::move(c)}};
}

OptimizerConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  OptimizerConfig cfg;
  read_optional(j, "tol", cfg.tol);
  read_optional(j, "max_iter", cfg.max_iter);
  read_optional(j, "fd_step", cfg.fd_step);
  read_optional(j, "min_step", cfg.min_step);
  read_optional(j, "initial_step", cfg.initial_step);
  read_optional(j, "grow", cfg.grow);
  read_optional(j, "shrink", cfg.shrink);
  read_optional(j, "polish_tol", cfg.polish_tol);
  read_optional(j, "newton_switch", cfg.newton_switch);
  read_optional(j, "hessian_step", cfg.hessian_step);
  read_optional(j, "n_spin", cfg.n_spin);
  read_optional(j, "n_type_ii", cfg.n_type_ii);
  read_optional(j, "n_type_iii", cfg.n_type_iii);
  read_optional(j, "n_general", cfg.n_general);
  read_optional(j, "refine_top", cfg.refine_top);
  read_optional(j, "tie_tol", cfg.tie_tol);
  read_optional(j, "tie_rel_tol", cfg.tie_rel_tol);
  read_optional(j, "start_tie_tol", cfg.start_tie_tol);
  if (j.contains("aligned_theta") && !j.at("aligned_theta").is_null()) {
    read_optional(j, "aligned_theta", cfg.aligned_theta.emplace());
  }
  if (cfg.n_spin < 2 || cfg.n_type_ii < 2 || cfg.n_type_iii < 2 || cfg.n_general < 2) {
    throw ParseError("config: seeds per axis must be at least 2");
  }
  if (!(cfg.tol > 0) || cfg.max_iter < 1 || !(cfg.fd_step > 0) || !(cfg.shrink > 0 && cfg.shrink < 1) ||
      !(cfg.grow >= 1)) {
    throw ParseError("config: invalid optimizer settings");
  }
  return cfg;
}

json config_to_json(const OptimizerConfig& cfg) {
  json j = {{"tol", cfg.tol},
            {"max_iter", cfg.max_iter},
            {"fd_step", cfg.fd_step},
            {"min_step", cfg.min_step},
            {"initial_step", cfg.initial_step},
            {"grow", cfg.grow},
            {"shrink", cfg.shrink},
            {"polish_tol", cfg.polish_tol},
            {"newton_switch", cfg.newton_switch},
            {"hessian_step", cfg.hessian_step},
            {"n_spin", cfg.n_spin},
            {"n_type_ii", cfg.n_type_ii},
            {"n_type_iii", cfg.n_type_iii},
            {"n_general", cfg.n_general},
            {"refine_top", cfg.refine_top},
            {"tie_tol", cfg.tie_tol},
            {"tie_rel_tol", cfg.tie_rel_tol},
            {"start_tie_tol", cfg.start_tie_tol}};
  j["aligned_theta"] = cfg.aligned_theta ? json(*cfg.aligned_theta) : json(nullptr);
  return j;
}

json params_to_json(const MeasurementParams& p) {
  return {{"alpha", p.alpha}, {"beta", p.beta},       {"gamma", p.gamma},
          {"psi", p.psi},     {"theta_r", p.theta_r}, {"phi_r", p.phi_r}};
}

json diagram_record(const MeasurementParams& p) {
  const MeasurementBasis b = full_basis(p);
  const SpinDiagram d = spin_diagram(b);
  const MeasurementType t = classify(b);
  json vectors = json::array();
  for (const Vec3& v : d.vectors) vectors.push_back({v[0], v[1], v[2]});
  return {{"params", params_to_json(p)},
          {"vectors", std::move(vectors)},
          {"L_squared", d.total_length_sq},
          {"type", std::string(label_name(t.label))},
          {"parity_preserving", t.parity_preserving},
          {"zero_diagram", t.zero_diagram}};
}

json result_to_json(const OptimizationResult& r) {
  return {{"family", std::string(family_name(r.family))},
          {"value", r.value},
          {"params", params_to_json(r.params)},
          {"type", std::string(label_name(r.type.label))},
          {"parity_preserving", r.type.parity_preserving},
          {"residual_norm", r.residual_norm},
          {"gradient_norm", r.gradient_norm},
          {"converged", r.converged},
          {"starts", r.starts}};
}

json comparison_to_json(const FamilyComparison& c) {
  json families = json::object();
  for (const auto& [f, r] : c.per_family) families[std::string(family_name(f))] = result_to_json(r);
  json ties = json::array();
  for (auto f : c.ties) ties.push_back(std::string(family_name(f)));
  return {{"value", c.best_value},
          {"optimal_family", std::string(family_name(c.optimal))},
          {"ties", std::move(ties)},
          {"optimum", result_to_json(c.best())},
          {"families", std::move(families)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

}  // namespace qd::io
