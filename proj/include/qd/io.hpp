#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qd/density.hpp"
#include "qd/measurement.hpp"
#include "qd/models.hpp"
#include "qd/optimizer.hpp"

namespace qd::io {

using json = nlohmann::json;

/// A state file: {"dims": [dA, dB], "matrix": [[re, im], ...]} row-major.
/// An optional "theta" records aligned-mixture provenance and enables the
/// analytic seed.
struct StateFile {
  DensityMatrix rho;
  std::optional<double> theta;
};

/// Throws ParseError for malformed JSON, DimensionError / SymmetryError /
/// DomainError for matrices that are not density matrices.
StateFile state_from_json(const json& j);
json state_to_json(const DensityMatrix& rho, std::optional<double> theta = std::nullopt);

/// {"n", "s", "b": [...], "J": {"x": [[i, j, v], ...], "y": ..., "z": ..., "xy": ...}}
XYZChainSpec chain_from_json(const json& j);
json chain_to_json(const XYZChainSpec& spec);

/// Every field is optional; missing ones keep their defaults.
OptimizerConfig config_from_json(const json& j);
json config_to_json(const OptimizerConfig& cfg);

json params_to_json(const MeasurementParams& p);
/// Diagram export record: params, vectors, L_squared, type, parity_preserving,
/// zero_diagram.
json diagram_record(const MeasurementParams& p);
json result_to_json(const OptimizationResult& r);
json comparison_to_json(const FamilyComparison& c);

/// Reads and parses a JSON file; throws ParseError.
json read_json_file(const std::string& path);

/// Locale-independent shortest-of-12-significant-digits formatting.
std::string format_number(double v);

}  // namespace qd::io
