#ifndef BORDCALC_CONFIG_HPP
#define BORDCALC_CONFIG_HPP

// Line-oriented `key = value` configuration. Unknown keys are rejected.

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bordcalc/coefficients.hpp"
#include "bordcalc/errors.hpp"

namespace bordcalc {

struct Config {
  int max_degree = 8;
  std::size_t fuel = 1'000'000;
  int slack = 4;
  int window = 1;  // extra e-exponent room in basis tables
  int coef_max_degree = 16;
  std::vector<int> coef_generators;  // empty means every allowed degree
  int samples = 200;                 // randomized checks per suite
  unsigned long long seed = 20240601;

  CoefRing coef_ring() const { return CoefRing(coef_max_degree, coef_generators); }

  void validate() const {
    if (max_degree < 0) throw ContractViolation("config: max_degree must be >= 0");
    if (slack < 0) throw ContractViolation("config: slack must be >= 0");
    if (window < 0) throw ContractViolation("config: window must be >= 0");
    if (fuel == 0) throw ContractViolation("config: fuel must be positive");
    if (samples < 0) throw ContractViolation("config: samples must be >= 0");
    coef_ring();  // checks the generator list and the cap
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline long long to_integer(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ContractViolation("config: '" + key + "' expects an integer, got '" + v + "'");
  }
}

}  // namespace detail

/// Apply one `key = value` assignment.
inline void apply_setting(Config& c, const std::string& key, const std::string& value) {
  using detail::to_integer;
  if (key == "max_degree") c.max_degree = static_cast<int>(to_integer(key, value));
  else if (key == "fuel") {
    auto f = to_integer(key, value);
    if (f <= 0) throw ContractViolation("config: fuel must be positive");
    c.fuel = static_cast<std::size_t>(f);
  } else if (key == "slack") c.slack = static_cast<int>(to_integer(key, value));
  else if (key == "window") c.window = static_cast<int>(to_integer(key, value));
  else if (key == "samples") c.samples = static_cast<int>(to_integer(key, value));
  else if (key == "seed") c.seed = static_cast<unsigned long long>(to_integer(key, value));
  else if (key == "coef.max_degree") c.coef_max_degree = static_cast<int>(to_integer(key, value));
  else if (key == "coef.generators") {
    c.coef_generators.clear();
    if (value == "auto") return;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = detail::trim(item);
      if (!item.empty()) c.coef_generators.push_back(static_cast<int>(to_integer(key, item)));
    }
    if (c.coef_generators.empty()) throw ContractViolation("config: coef.generators is empty");
  } else {
    throw ContractViolation("config: unknown key '" + key + "'");
  }
}

inline Config parse_config(std::istream& in, Config base = {}) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ContractViolation("config line " + std::to_string(lineno) + ": expected 'key = value'");
    apply_setting(base, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  base.validate();
  return base;
}

inline Config load_config_file(const std::string& path, Config base = {}) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

/// Explicit path first, then $BORDCALC_CONFIG, then defaults.
inline Config load_config(const std::optional<std::string>& path) {
  if (path) return load_config_file(*path);
  if (const char* env = std::getenv("BORDCALC_CONFIG"); env && *env) return load_config_file(env);
  return {};
}

}  // namespace bordcalc

#endif  // BORDCALC_CONFIG_HPP
