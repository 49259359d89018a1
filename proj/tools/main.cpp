#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qd/app.hpp"
#include "qd/error.hpp"
#include "qd/io.hpp"
#include "qd/kernels.hpp"
#include "qd/models.hpp"
#include "qd/verify.hpp"

namespace {

using qd::io::json;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw qd::UsageError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

qd::OptimizerConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return qd::io::config_from_json(qd::io::read_json_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum discord and entropic deficits with a qutrit measured subsystem"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_path;
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config, "Print the effective optimizer config as JSON and exit");
  app.add_option("--config", config_path, "Optimizer config file (JSON)")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Output file for --dump-config");

  qd::MeasurementParams dp;
  auto* diagram = app.add_subcommand("diagram", "Spin diagram of a measurement");
  diagram->add_option("--alpha", dp.alpha, "alpha in [0, pi/4]");
  diagram->add_option("--beta", dp.beta, "beta in [0, pi/4]");
  diagram->add_option("--gamma", dp.gamma, "gamma in (-pi/2, pi/2]");
  diagram->add_option("--psi", dp.psi, "outer z rotation");
  diagram->add_option("--theta", dp.theta_r, "y rotation");
  diagram->add_option("--phi", dp.phi_r, "inner z rotation");
  diagram->add_option("--out", out_path, "Output file");

  std::string state_path;
  std::string measure = "all";
  std::string family = "all";
  auto* discord = app.add_subcommand("discord", "Minimize measures for a state file");
  discord->add_option("state", state_path, "State file (JSON)")->required()->check(CLI::ExistingFile);
  discord->add_option("--measure", measure, "d, i1, i2 or all");
  discord->add_option("--family", family, "spin, ii, iii, general or all");
  discord->add_option("--config", config_path, "Optimizer config file (JSON)")->check(CLI::ExistingFile);
  discord->add_option("--out", out_path, "Output file");

  qd::app::SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Sweep the aligned mixture over theta (CSV)");
  sweep->add_option("--theta-min", sweep_opts.theta_min, "Lower theta");
  sweep->add_option("--theta-max", sweep_opts.theta_max, "Upper theta");
  sweep->add_option("--points", sweep_opts.points, "Number of grid points");
  sweep->add_option("--config", config_path, "Optimizer config file (JSON)")->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "Output file");

  std::string chain_path;
  qd::app::ChainOptions chain_opts;
  std::vector<std::size_t> pair{0, 1};
  auto* chain = app.add_subcommand("chain", "Chain ground state or fixed-parity state, reduced pair");
  chain->add_option("spec", chain_path, "Chain spec file (JSON); omit for the fixed-parity state")
      ->check(CLI::ExistingFile);
  chain->add_option("--n", chain_opts.n, "Sites of the fixed-parity state");
  chain->add_option("--theta", chain_opts.theta, "Coherent-state angle of the fixed-parity state");
  chain->add_option("--sign", chain_opts.sign, "+1 or -1")->check(CLI::IsMember({1, -1}));
  chain->add_option("--pair", pair, "Sites i j of the reduced pair")->expected(2);
  chain->add_option("--max-dim", chain_opts.max_dim, "Hilbert-space cap");
  chain->add_option("--config", config_path, "Optimizer config file (JSON)")->check(CLI::ExistingFile);
  chain->add_option("--out", out_path, "Output file");

  qd::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--suite", verify_opts.suites, "linalg, diagrams, measures, closedforms, parity");
  verify->add_option("--draws", verify_opts.draws, "Random draws per suite");
  verify->add_option("--seed", verify_opts.seed, "Random seed");
  verify->add_option("--points", verify_opts.grid_points, "Theta grid of the closedforms suite");
  verify->add_option("--out", out_path, "Output file");

  std::string state_kind;
  double state_theta = 0.0;
  auto* state = app.add_subcommand("state", "Write a reference state file");
  state->add_option("kind", state_kind, "aligned or bell")->required()->check(CLI::IsMember({"aligned", "bell"}));
  state->add_option("--theta", state_theta, "theta of the aligned mixture");
  state->add_option("--out", out_path, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qd::app::kUsage;
  }

  try {
    const qd::OptimizerConfig cfg = load_config(config_path);
    if (dump_config) {
      Output out(out_path);
      out.stream() << qd::io::config_to_json(cfg).dump(2) << '\n';
      return qd::app::kOk;
    }

    if (*diagram) {
      json record;
      try {
        record = qd::app::cmd_diagram(dp);
      } catch (const qd::DomainError& e) {
        throw qd::UsageError(e.what());
      }
      Output out(out_path);
      out.stream() << record.dump(2) << '\n';
      return qd::app::kOk;
    }

    if (*discord) {
      const auto measures = qd::app::parse_measures(measure);
      const auto families = qd::app::parse_families(family);
      const qd::io::StateFile file = qd::io::state_from_json(qd::io::read_json_file(state_path));
      const qd::app::DiscordReport report = qd::app::run_discord(file, measures, families, cfg);
      Output out(out_path);
      out.stream() << report.json.dump(2) << '\n';
      return report.converged ? qd::app::kOk : qd::app::kNonConvergence;
    }

    if (*sweep) {
      qd::app::validate(sweep_opts);
      const auto rows = qd::app::run_sweep(sweep_opts, cfg);
      Output out(out_path);
      qd::app::write_csv(out.stream(), rows);
      for (const auto& r : rows) {
        if (!r.d.converged || !r.i1.converged || !r.i2.converged) return qd::app::kNonConvergence;
      }
      return qd::app::kOk;
    }

    if (*chain) {
      if (pair.size() != 2) throw qd::UsageError("--pair takes two site indices");
      chain_opts.site_a = pair[0];
      chain_opts.site_b = pair[1];
      if (!chain_path.empty()) {
        chain_opts.spec = qd::io::chain_from_json(qd::io::read_json_file(chain_path));
      }
      qd::app::ChainReport report;
      try {
        report = qd::app::run_chain(chain_opts, cfg);
      } catch (const qd::DomainError& e) {
        throw qd::UsageError(e.what());
      }
      Output out(out_path);
      out.stream() << report.json.dump(2) << '\n';
      return report.converged ? qd::app::kOk : qd::app::kNonConvergence;
    }

    if (*verify) {
      const qd::VerifyReport report = qd::run_verify(verify_opts);
      for (const auto& s : report.suites) {
        std::cerr << (s.ok() ? "PASS " : "FAIL ") << s.name << ": " << s.passed << " passed, "
                  << s.failed << " failed\n";
        for (const auto& msg : s.failures) std::cerr << "  " << msg << '\n';
      }
      std::cerr << "kernels: " << qd::kernels::isa_name(qd::kernels::active().isa) << '\n';
      Output out(out_path);
      out.stream() << report.to_json().dump(2) << '\n';
      return report.ok() ? qd::app::kOk : qd::app::kVerifyFailed;
    }

    if (*state) {
      Output out(out_path);
      if (state_kind == "bell") {
        out.stream() << qd::io::state_to_json(qd::bell_anchor()).dump() << '\n';
      } else {
        out.stream() << qd::io::state_to_json(qd::aligned_mixture(state_theta).rho, state_theta).dump()
                     << '\n';
      }
      return qd::app::kOk;
    }

    std::cout << app.help();
    return qd::app::kUsage;
  } catch (const qd::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return qd::app::kUsage;
  } catch (const qd::Error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return qd::app::kInputFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qd::app::kInputFormat;
  }
}
