#pragma once
// JSON (de)serialization for relay channel specs.
//
// Schema:
//   { "input_size": 2,
//     "output_size": 2,
//     "transition": [[0.8, 0.2], [0.2, 0.8]],   // row-major, row-stochastic
//     "r0": 0.18 }                              // nonnegative link rate
//
// Error messages name the offending field so CLI users can fix spec files
// without reading source.  Values parse as IEEE doubles; bit-exact decimal
// round-trips are not a goal.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "relaybounds/channel.hpp"

namespace relaybounds {

inline RelayChannelSpec relay_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("spec: top level must be a JSON object");
  auto require_uint = [&](const char* field) -> std::size_t {
    if (!j.contains(field)) throw std::invalid_argument(std::string("spec field '") + field + "': missing");
    const auto& v = j.at(field);
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
      throw std::invalid_argument(std::string("spec field '") + field + "': must be a positive integer");
    return v.get<std::size_t>();
  };
  const std::size_t input_size = require_uint("input_size");
  const std::size_t output_size = require_uint("output_size");

  if (!j.contains("transition")) throw std::invalid_argument("spec field 'transition': missing");
  const auto& transition = j.at("transition");
  if (!transition.is_array() || transition.size() != input_size)
    throw std::invalid_argument("spec field 'transition': must be an array of input_size rows");
  Matrix m;
  m.reserve(input_size);
  for (std::size_t x = 0; x < transition.size(); ++x) {
    const auto& row = transition.at(x);
    if (!row.is_array() || row.size() != output_size)
      throw std::invalid_argument("spec field 'transition' row " + std::to_string(x) +
                                  ": must be an array of output_size numbers");
    Dist r;
    r.reserve(output_size);
    for (const auto& v : row) {
      if (!v.is_number())
        throw std::invalid_argument("spec field 'transition' row " + std::to_string(x) +
                                    ": non-numeric entry");
      r.push_back(v.get<double>());
    }
    m.push_back(std::move(r));
  }

  if (!j.contains("r0")) throw std::invalid_argument("spec field 'r0': missing");
  if (!j.at("r0").is_number()) throw std::invalid_argument("spec field 'r0': must be a number");
  const double r0 = j.at("r0").get<double>();

  try {
    return make_relay_spec(std::move(m), r0);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("spec fields 'transition'/'r0': ") + e.what());
  }
}

inline RelayChannelSpec load_relay_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("spec file " + path + ": " + e.what());
  }
  return relay_spec_from_json(j);
}

inline nlohmann::json relay_spec_to_json(const RelayChannelSpec& spec) {
  return nlohmann::json{{"input_size", spec.input_size},
                        {"output_size", spec.output_size},
                        {"transition", spec.link},
                        {"r0", spec.r0}};
}

}  // namespace relaybounds
