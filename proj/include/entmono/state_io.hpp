#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "entmono/errors.hpp"
#include "entmono/states.hpp"

namespace entmono {

/// Malformed state document.
class ParseError : public Error {
 public:
  using Error::Error;
};

using AnyState = std::variant<PureState, DensityOperator>;

/// Parses a JSON state document:
///
///   {"dims": [2, 2], "matrix": [[re, im], ...]}      density operator
///   {"dims": [2, 2], "amplitudes": [[re, im], ...]}  pure state
///
/// `matrix` is row-major. Structural problems raise ParseError; a document
/// that parses but violates a state invariant raises ArgumentError.
AnyState parse_state(std::string_view text);
AnyState read_state_file(const std::filesystem::path& path);

std::string to_json(const PureState& psi);
std::string to_json(const DensityOperator& rho);

DensityOperator as_density(const AnyState& state);

}  // namespace entmono
