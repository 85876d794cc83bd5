#pragma once

/// \file config.hpp
/// \brief Experiment parameters: a declared schema per experiment and a flat
/// key/value text format.
///
///     # comment
///     n_max = 8
///     t     = 0.05, 0.3, 1, 3
///     alpha = 1/3, 1/2, 2/3
///     p     = 2, 4, inf
///     seed  = 12345
///
/// Lists are comma separated. Real entries accept "inf" and fractions a/b.
/// Every experiment also takes `seed` (unsigned 64-bit). Unknown keys, repeated
/// keys, malformed numbers and out-of-range values raise ConfigError.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hcube::harness {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ParamType { integer, real, integer_list, real_list };

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::integer;
  std::string default_value;
  double min = -std::numeric_limits<double>::infinity();
  double max = std::numeric_limits<double>::infinity();
  std::string help;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Shortest text that reads back to the same double; "inf", "-inf", "nan" for the rest.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  if (s == "inf" || s == "+inf") return out = std::numeric_limits<double>::infinity(), true;
  if (s == "-inf") return out = -std::numeric_limits<double>::infinity(), true;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    double a = 0, b = 0;
    if (!parse_double(trim(s.substr(0, slash)), a) || !parse_double(trim(s.substr(slash + 1)), b)) return false;
    if (b == 0 || std::isinf(a) || std::isinf(b)) return false;
    out = a / b;
    return true;
  }
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Validated parameter values for one experiment.
class Config {
public:
  Config() = default;

  /// All defaults of the schema.
  static Config defaults(const std::vector<ParamSpec>& schema) {
    Config c;
    c.schema_ = schema;
    for (const auto& spec : schema) c.set(spec.name, spec.default_value);
    return c;
  }

  /// Defaults overridden by the `key = value` lines of `text`.
  static Config parse(const std::vector<ParamSpec>& schema, std::string_view text) {
    Config c = defaults(schema);
    std::map<std::string, int> seen;
    int lineno = 0;
    for (auto line : detail::split(text, '\n')) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = detail::trim(line.substr(0, hash));
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
      const std::string key(detail::trim(line.substr(0, eq)));
      if (seen[key]++) throw ConfigError("config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
      c.set(key, detail::trim(line.substr(eq + 1)));
    }
    return c;
  }

  static Config load(const std::vector<ParamSpec>& schema, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(schema, ss.str());
  }

  /// Sets one key from its text form, validating against the schema.
  void set(const std::string& key, std::string_view text) {
    if (key == "seed") {
      std::uint64_t s = 0;
      if (!detail::parse_u64(detail::trim(text), s)) throw ConfigError("seed: expected an unsigned 64-bit integer");
      seed_ = s;
      return;
    }
    const ParamSpec* spec = find(key);
    if (!spec) throw ConfigError("unknown parameter '" + key + "'");
    const bool list = spec->type == ParamType::integer_list || spec->type == ParamType::real_list;
    const bool integral = spec->type == ParamType::integer || spec->type == ParamType::integer_list;
    auto tokens = detail::split(text, ',');
    if (!list && tokens.size() != 1) throw ConfigError(key + ": expected a single value");
    std::vector<double> values;
    for (auto tok : tokens) {
      double v = 0;
      if (!detail::parse_double(tok, v)) throw ConfigError(key + ": cannot parse '" + std::string(tok) + "'");
      if (integral && (std::isinf(v) || v != std::floor(v)))
        throw ConfigError(key + ": expected an integer, got '" + std::string(tok) + "'");
      if (v < spec->min || v > spec->max)
        throw ConfigError(key + ": value " + std::string(tok) + " outside [" + format_number(spec->min) + ", " +
                          format_number(spec->max) + "]");
      values.push_back(v);
    }
    values_[key] = std::move(values);
  }

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  void set_seed(std::uint64_t s) noexcept { seed_ = s; }

  [[nodiscard]] long integer(const std::string& key) const { return static_cast<long>(get(key).front()); }
  [[nodiscard]] double real(const std::string& key) const { return get(key).front(); }
  [[nodiscard]] const std::vector<double>& reals(const std::string& key) const { return get(key); }
  [[nodiscard]] std::vector<int> integers(const std::string& key) const {
    std::vector<int> out;
    for (double v : get(key)) out.push_back(static_cast<int>(v));
    return out;
  }

  /// Canonical `key = value` text, schema order, seed last.
  [[nodiscard]] std::string render() const {
    std::string out;
    for (const auto& spec : schema_) {
      out += spec.name + " = ";
      const auto& v = get(spec.name);
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
      out += '\n';
    }
    out += "seed = " + std::to_string(seed_) + '\n';
    return out;
  }

  [[nodiscard]] const std::vector<ParamSpec>& schema() const noexcept { return schema_; }

private:
  [[nodiscard]] const ParamSpec* find(const std::string& key) const {
    for (const auto& s : schema_)
      if (s.name == key) return &s;
    return nullptr;
  }

  [[nodiscard]] const std::vector<double>& get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("parameter '" + key + "' is not declared");
    return it->second;
  }

  std::vector<ParamSpec> schema_;
  std::map<std::string, std::vector<double>> values_;
  std::uint64_t seed_ = kDefaultSeed;
};

}  // namespace hcube::harness
