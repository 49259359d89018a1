#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qd {

struct VerifyOptions {
  std::vector<std::string> suites;  ///< empty: all
  int draws = 1000;
  std::uint64_t seed = 20120601;
  int grid_points = 10;             ///< θ grid of the closedforms suite
};

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;  ///< first few failure messages
  nlohmann::json details = nlohmann::json::object();

  bool ok() const noexcept { return failed == 0; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool ok() const noexcept;
  nlohmann::json to_json() const;
};

/// linalg, diagrams, measures, closedforms, parity
const std::vector<std::string>& verify_suite_names();

/// Throws UsageError for an unknown suite name or non-positive draw count.
VerifyReport run_verify(const VerifyOptions& opts);

}  // namespace qd
