#pragma once

/// \file common.hpp
/// \brief Small helpers shared by the experiment definitions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hcube/harness/config.hpp"
#include "hcube/harness/registry.hpp"
#include "hcube/harness/result.hpp"

namespace hcube::harness::experiments {

inline ParamSpec integer_param(std::string name, std::string def, double lo, double hi, std::string help) {
  return {std::move(name), ParamType::integer, std::move(def), lo, hi, std::move(help)};
}
inline ParamSpec real_param(std::string name, std::string def, double lo, double hi, std::string help) {
  return {std::move(name), ParamType::real, std::move(def), lo, hi, std::move(help)};
}
inline ParamSpec integers_param(std::string name, std::string def, double lo, double hi, std::string help) {
  return {std::move(name), ParamType::integer_list, std::move(def), lo, hi, std::move(help)};
}
inline ParamSpec reals_param(std::string name, std::string def, double lo, double hi, std::string help) {
  return {std::move(name), ParamType::real_list, std::move(def), lo, hi, std::move(help)};
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// lo, 2 lo, 4 lo, ... up to hi.
inline std::vector<double> doubling(double lo, double hi) {
  std::vector<double> out;
  for (double v = lo; v <= hi; v *= 2) out.push_back(v);
  return out;
}

/// Running min and max of positive values.
struct Spread {
  double lo = kInf;
  double hi = 0;
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  [[nodiscard]] double ratio() const { return lo > 0 ? hi / lo : kInf; }
};

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double w = 0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

}  // namespace hcube::harness::experiments
