#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qd/app.hpp"
#include "qd/error.hpp"
#include "qd/io.hpp"
#include "qd/verify.hpp"

using namespace qd;
using io::json;

TEST_CASE("state files round-trip") {
  const DensityMatrix rho = aligned_mixture(0.3).rho;
  const json j = io::state_to_json(rho, 0.3);
  CHECK(j.at("dims") == json::array({3, 3}));
  CHECK(j.at("matrix").size() == 81);
  const io::StateFile back = io::state_from_json(j);
  CHECK(back.theta == 0.3);
  CHECK(frobenius_distance(back.rho.matrix(), rho.matrix()) == 0.0);
  CHECK_THROWS_AS(io::state_from_json(json{{"dims", {3, 3}}}), ParseError);
  CHECK_THROWS_AS(io::state_from_json(json{{"dims", {3, 3}}, {"matrix", json::array()}}), ParseError);
  json bad = j;
  bad["matrix"][1] = {0.5, 0.0};
  CHECK_THROWS_AS(io::state_from_json(bad), SymmetryError);
}

TEST_CASE("chain specs round-trip") {
  XYZChainSpec spec = XYZChainSpec::uniform(3, 0.5, 1.0, 0.2, -0.1);
  spec.jxy.push_back({0, 2, 0.3});
  const XYZChainSpec back = io::chain_from_json(io::chain_to_json(spec));
  CHECK(back == spec);
  const json minimal = json::parse(R"({"n": 2, "s": 1, "b": [1, 1], "J": {"x": [[0, 1, 0.5]]}})");
  const XYZChainSpec m = io::chain_from_json(minimal);
  CHECK(m.jx.size() == 1);
  CHECK(m.jy.empty());
  CHECK_THROWS_AS(io::chain_from_json(json::parse(R"({"n": 2, "J": {"x": [[0, 1]]}})")), ParseError);
}

TEST_CASE("config round-trip and defaults") {
  OptimizerConfig cfg;
  cfg.tol = 1e-9;
  cfg.n_general = 2;
  cfg.aligned_theta = 0.25;
  CHECK(io::config_from_json(io::config_to_json(cfg)) == cfg);
  CHECK(io::config_from_json(json::object()) == OptimizerConfig{});
  CHECK(io::config_to_json(OptimizerConfig{}).at("aligned_theta").is_null());
  CHECK_THROWS_AS(io::config_from_json(json{{"tol", "small"}}), ParseError);
  CHECK_THROWS_AS(io::config_from_json(json{{"n_spin", 1}}), ParseError);
}

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(2.5e-17) == "2.5e-17");
}

TEST_CASE("diagram records") {
  const json r = app::cmd_diagram({0.7854, 0.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(r.at("type") == "II");
  CHECK(r.at("zero_diagram") == true);
  CHECK(r.at("vectors").size() == 3);
  CHECK(app::cmd_diagram({0.2618, 0.7854, 0.0, 0.0, 0.0, 0.0}).at("type") == "III");
  CHECK(app::cmd_diagram({}).at("type") == "I");
  CHECK(app::cmd_diagram({}).at("L_squared").get<double>() == doctest::Approx(2.0));
  CHECK_THROWS_AS(app::cmd_diagram({0.9, 0.0, 0.0, 0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("flag parsing") {
  CHECK(app::parse_measures("all").size() == 3);
  CHECK(app::parse_measures("i2,d").size() == 2);
  CHECK_THROWS_AS(app::parse_measures("i3"), UsageError);
  CHECK_THROWS_AS(app::parse_measures(""), UsageError);
  CHECK(app::parse_families("iii,ii,iii").size() == 2);
  CHECK(app::parse_families("all").size() == 4);
  CHECK_THROWS_AS(app::parse_families("iv"), UsageError);
}

TEST_CASE("discord command") {
  const io::StateFile file{aligned_mixture(closed::theta_c()).rho, closed::theta_c()};
  const auto report = app::run_discord(file, app::parse_measures("i2"), app::parse_families("all"), {});
  CHECK(report.converged);
  CHECK(report.json["measures"]["I2"]["value"].get<double>() == doctest::Approx(2.0 / 9.0).epsilon(1e-9));
  CHECK(report.json["config"]["aligned_theta"].get<double>() == closed::theta_c());
  const io::StateFile zero{aligned_mixture(0.0).rho, std::nullopt};
  const auto z = app::run_discord(zero, app::parse_measures("all"), app::parse_families("all"), {});
  for (const char* m : {"D", "I1", "I2"}) CHECK(std::abs(z.json["measures"][m]["value"].get<double>()) < 1e-10);
  const io::StateFile qubit{DensityMatrix(ComplexMatrix::identity(4) * cplx(0.25), {2, 2}), std::nullopt};
  CHECK_THROWS_AS(app::run_discord(qubit, app::parse_measures("d"), app::parse_families("all"), {}),
                  DimensionError);
}

TEST_CASE("sweep validation and CSV") {
  CHECK_THROWS_AS(app::validate(app::SweepOptions{0.5, 0.4, 10}), UsageError);
  CHECK_THROWS_AS(app::validate(app::SweepOptions{0.0, 2.0, 10}), UsageError);
  CHECK_THROWS_AS(app::validate(app::SweepOptions{0.0, 1.0, 1}), UsageError);
  const auto rows = app::run_sweep({0.3, 0.5, 2}, {});
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].theta == 0.5);
  std::ostringstream a, b;
  app::write_csv(a, rows);
  app::write_csv(b, app::run_sweep({0.3, 0.5, 2}, {}));
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header ==
        "theta,D,I1,I2,D_family,I1_family,I2_family,alpha,beta,gamma,phi,"
        "D_residual,I1_residual,I2_residual,D_closed,I2_closed");
  CHECK(first.rfind("0.3,", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), ',') == 15);
}

TEST_CASE("chain command") {
  app::ChainOptions free;
  free.spec = XYZChainSpec::uniform(2, 1.0, 0.0, 0.0, 0.0);
  const auto r = app::run_chain(free, {});
  CHECK(r.json["ground_energy"].get<double>() == doctest::Approx(-2.0));
  CHECK(r.json["parity_check"] == true);
  for (const char* m : {"D", "I1", "I2"}) CHECK(std::abs(r.json["measures"][m]["value"].get<double>()) < 1e-10);
  app::ChainOptions big;
  big.n = 7;
  big.theta = 0.3;
  CHECK_THROWS_AS(app::run_chain(big, {}), DimensionError);
}

TEST_CASE("verify runner") {
  VerifyOptions opts;
  opts.suites = {"diagrams", "parity"};
  opts.draws = 50;
  const VerifyReport report = run_verify(opts);
  CHECK(report.ok());
  CHECK(report.suites.size() == 2);
  CHECK(report.to_json()["suites"][0]["name"] == "diagrams");
  opts.suites = {"nope"};
  CHECK_THROWS_AS(run_verify(opts), UsageError);
}
