#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "dconc/roof.hpp"

namespace dconc {

/// Malformed state file; `field()` names the offending JSON field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& message)
        : std::runtime_error("field '" + field + "': " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

using nlohmann::json;

/// {"dA", "dB", "matrix": [[re, im], ...]} with row-major entries.
json to_json(const DensityMatrix& rho);
/// {"dA", "dB", "amplitudes": [[re, im], ...]}.
json to_json(const PureState& psi);
/// {"weights": [...], "members": [PureState...]}.
json to_json(const Decomposition& dec);
json to_json(const RoofConfig& cfg);
/// value, bracket, weights, member vectors and config echo.
json to_json(const RoofEstimate& est, const RoofConfig& cfg);

DensityMatrix density_from_json(const json& j);
PureState pure_from_json(const json& j);

using StateFile = std::variant<DensityMatrix, PureState>;

/// Parses a state document: "matrix" selects a density matrix, "amplitudes"
/// a pure state. Throws ParseError on malformed input and DomainError on
/// invariant violations.
StateFile parse_state(const std::string& text);
StateFile load_state(const std::string& path);

} // namespace dconc
