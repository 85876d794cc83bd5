#pragma once

/// \file cube_json.hpp
/// \brief JSON serialization of cube functions and spectra.
///
/// Point-value form:  {"n": 3, "m": 1, "q": 2, "values": [[v0], [v1], ...]}
///   values[x] is the value at the point whose sign bitmask is x
///   (bit i set means eps_i = -1). "q" is the exponent of the value norm;
///   the string "inf" stands for q = infinity.
/// Spectrum form:     {"n": 3, "m": 1, "coeffs": {"5": [0.25], ...}}
///   keys are decimal subset bitmasks, missing subsets are zero.

#include <string>

#include <json.hpp>

#include "hcube/cube.hpp"

namespace hcube::cube {

inline nlohmann::json to_json(const CubeFunction& f, const ValueNorm& xnorm = {}) {
  nlohmann::json j;
  j["n"] = f.n();
  j["m"] = f.m();
  if (xnorm.is_infinite())
    j["q"] = "inf";
  else
    j["q"] = xnorm.q;
  auto& vals = j["values"] = nlohmann::json::array();
  for (std::uint32_t x = 0; x < f.points(); ++x) {
    auto v = f.at(x);
    vals.push_back(std::vector<double>(v.begin(), v.end()));
  }
  return j;
}

inline nlohmann::json to_json(const Spectrum& s) {
  nlohmann::json j;
  j["n"] = s.n();
  j["m"] = s.m();
  auto& coeffs = j["coeffs"] = nlohmann::json::object();
  for (std::uint32_t S = 0; S < s.subsets(); ++S) {
    auto v = s.at(SubsetMask(S));
    if (std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; })) continue;
    coeffs[std::to_string(S)] = std::vector<double>(v.begin(), v.end());
  }
  return j;
}

namespace detail {

inline std::vector<double> read_vector(const nlohmann::json& j, int m) {
  if (j.is_number()) {
    if (m != 1) throw std::invalid_argument("cube json: scalar entry for vector-valued function");
    return {j.get<double>()};
  }
  auto v = j.get<std::vector<double>>();
  if (static_cast<int>(v.size()) != m) throw std::invalid_argument("cube json: entry length != m");
  return v;
}

}  // namespace detail

inline CubeFunction function_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int m = j.value("m", 1);
  ::hcube::cube::detail::check_dims(n, m);
  const auto& vals = j.at("values");
  if (!vals.is_array() || vals.size() != (std::size_t{1} << n))
    throw std::invalid_argument("cube json: values must have 2^n entries");
  std::vector<double> data;
  data.reserve(vals.size() * m);
  for (const auto& e : vals) {
    auto v = detail::read_vector(e, m);
    data.insert(data.end(), v.begin(), v.end());
  }
  return CubeFunction(n, m, std::move(data));
}

inline ValueNorm value_norm_from_json(const nlohmann::json& j) {
  if (!j.contains("q")) return {};
  const auto& q = j.at("q");
  if (q.is_string()) {
    if (q.get<std::string>() == "inf") return ValueNorm::infinity();
    throw std::invalid_argument("cube json: q must be a number or \"inf\"");
  }
  return ValueNorm(q.get<double>());
}

inline Spectrum spectrum_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int m = j.value("m", 1);
  Spectrum s(n, m);
  for (const auto& [key, value] : j.at("coeffs").items()) {
    std::size_t pos = 0;
    const unsigned long mask = std::stoul(key, &pos);
    if (pos != key.size() || mask >= s.subsets())
      throw std::invalid_argument("cube json: bad subset mask '" + key + "'");
    auto v = detail::read_vector(value, m);
    std::copy(v.begin(), v.end(), s.at(SubsetMask(static_cast<std::uint32_t>(mask))).begin());
  }
  return s;
}

}  // namespace hcube::cube
