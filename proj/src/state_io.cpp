#include "entmono/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace entmono {

namespace {

using nlohmann::json;

Dims parse_dims(const json& doc) {
  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty()) {
    throw ParseError("missing or empty 'dims' array");
  }
  Dims dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) {
      throw ParseError("'dims' entries must be positive integers");
    }
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

std::vector<Complex> parse_pairs(const json& arr, const char* field) {
  if (!arr.is_array()) throw ParseError(std::string("'") + field + "' must be an array");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError(std::string("'") + field + "' entries must be [re, im] number pairs");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

json pairs_json(std::span<const Complex> v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

}  // namespace

AnyState parse_state(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("state document must be a JSON object");
  const Dims dims = parse_dims(doc);
  const std::size_t n = product(dims);
  if (n > kMaxStateDimension) throw ParseError("total dimension exceeds 32");

  const bool has_matrix = doc.contains("matrix");
  const bool has_amps = doc.contains("amplitudes");
  if (has_matrix == has_amps) {
    throw ParseError("state document needs exactly one of 'matrix' or 'amplitudes'");
  }
  if (has_amps) {
    auto amps = parse_pairs(doc["amplitudes"], "amplitudes");
    if (amps.size() != n) {
      throw ParseError("'amplitudes' has " + std::to_string(amps.size()) + " entries, dims need " +
                       std::to_string(n));
    }
    return PureState(std::move(amps), dims);
  }
  auto entries = parse_pairs(doc["matrix"], "matrix");
  if (entries.size() != n * n) {
    throw ParseError("'matrix' has " + std::to_string(entries.size()) + " entries, dims need " +
                     std::to_string(n * n));
  }
  return DensityOperator::from_matrix(ComplexMatrix(n, n, std::move(entries)), dims);
}

AnyState read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

std::string to_json(const PureState& psi) {
  json doc;
  doc["dims"] = psi.dims();
  doc["amplitudes"] = pairs_json(psi.amplitudes());
  return doc.dump(2);
}

std::string to_json(const DensityOperator& rho) {
  json doc;
  doc["dims"] = rho.dims();
  doc["matrix"] = pairs_json(rho.matrix().entries());
  return doc.dump(2);
}

DensityOperator as_density(const AnyState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return DensityOperator::from_pure(*psi);
  return std::get<DensityOperator>(state);
}

}  // namespace entmono
