#include "viscowave/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "viscowave/csv.hpp"

namespace viscowave {

namespace {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "L",   "n",     "p",         "r",          "epsilon",
      "gamma", "eta", "tau",       "b",          "scheme",
      "selection", "newton_tol",   "newton_max_iter", "preset",
      "u0",  "u1",    "seed",      "workers"};
  return keys;
}

bool is_known_key(const std::string& key) {
  for (const std::string& k : known_keys())
    if (k == key) return true;
  return false;
}

std::vector<std::pair<std::string, std::string>> parse_pairs(
    const std::vector<std::string>& lines, const std::string& origin) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& raw : lines) {
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ": expected key=value, got '" + line + "'");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
      key.pop_back();
    while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
      value.erase(value.begin());
    if (!is_known_key(key))
      throw ConfigError(origin + ": unknown configuration key '" + key + "'");
    out.emplace_back(key, value);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + value +
                      "' as a number");
  }
  if (pos != value.size() || !std::isfinite(v))
    throw ConfigError("key '" + key + "': cannot parse '" + value +
                      "' as a number");
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + value +
                      "' as an integer");
  }
  if (pos != value.size())
    throw ConfigError("key '" + key + "': cannot parse '" + value +
                      "' as an integer");
  return v;
}

} // namespace

Scenario Config::make_scenario() const {
  return build_scenario(preset, L, n, p, eta, gamma, u0, u1);
}

SolverConfig Config::make_solver_config() const {
  SolverConfig cfg;
  cfg.tau = tau;
  cfg.horizon_b = b;
  cfg.scheme = scheme;
  cfg.newton_tol = newton_tol;
  cfg.newton_max_iter = newton_max_iter;
  cfg.damping = 1.0;
  cfg.rspec = RegularizerSpec{epsilon, r};
  cfg.strategy = selection;
  return cfg;
}

std::string Config::serialize() const {
  std::ostringstream os;
  os << "L=" << format_g17(L) << '\n';
  os << "b=" << format_g17(b) << '\n';
  os << "epsilon=" << format_g17(epsilon) << '\n';
  os << "eta=" << format_g17(eta) << '\n';
  os << "gamma=" << format_g17(gamma) << '\n';
  os << "n=" << n << '\n';
  os << "newton_max_iter=" << newton_max_iter << '\n';
  os << "newton_tol=" << format_g17(newton_tol) << '\n';
  os << "p=" << format_g17(p) << '\n';
  os << "preset=" << preset << '\n';
  os << "r=" << format_g17(r) << '\n';
  os << "scheme=" << to_string(scheme) << '\n';
  os << "seed=" << seed << '\n';
  os << "selection=" << to_string(selection) << '\n';
  os << "tau=" << format_g17(tau) << '\n';
  os << "u0=" << u0.to_string() << '\n';
  os << "u1=" << u1.to_string() << '\n';
  os << "workers=" << workers << '\n';
  return os.str();
}

Config resolve_config(const std::string& config_path,
                      const std::vector<std::string>& overrides) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in)
      throw ConfigError("cannot read config file '" + config_path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    pairs = parse_pairs(lines, config_path);
  }
  const auto cli_pairs = parse_pairs(overrides, "override");
  pairs.insert(pairs.end(), cli_pairs.begin(), cli_pairs.end());

  // Preset first: it supplies the data-dependent defaults.
  Config cfg;
  for (const auto& [key, value] : pairs)
    if (key == "preset") cfg.preset = value;
  Scenario defaults = preset(cfg.preset); // validates the name
  cfg.L = defaults.L;
  cfg.n = defaults.n;
  cfg.p = defaults.p;
  cfg.eta = defaults.eta;
  cfg.gamma = defaults.gamma;
  cfg.u0 = defaults.u0;
  cfg.u1 = defaults.u1;

  bool r_given = false;
  for (const auto& [key, value] : pairs) {
    try {
      if (key == "preset") continue;
      else if (key == "L") cfg.L = parse_double(key, value);
      else if (key == "n") cfg.n = static_cast<int>(parse_int(key, value));
      else if (key == "p") cfg.p = parse_double(key, value);
      else if (key == "r") { cfg.r = parse_double(key, value); r_given = true; }
      else if (key == "epsilon") cfg.epsilon = parse_double(key, value);
      else if (key == "gamma") cfg.gamma = parse_double(key, value);
      else if (key == "eta") cfg.eta = parse_double(key, value);
      else if (key == "tau") cfg.tau = parse_double(key, value);
      else if (key == "b") cfg.b = parse_double(key, value);
      else if (key == "scheme") cfg.scheme = scheme_from_string(value);
      else if (key == "selection")
        cfg.selection = selection_strategy_from_string(value);
      else if (key == "newton_tol") cfg.newton_tol = parse_double(key, value);
      else if (key == "newton_max_iter")
        cfg.newton_max_iter = static_cast<int>(parse_int(key, value));
      else if (key == "u0") cfg.u0 = InitialData::parse(value);
      else if (key == "u1") cfg.u1 = InitialData::parse(value);
      else if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
      else if (key == "workers")
        cfg.workers = static_cast<int>(parse_int(key, value));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
  }
  if (!r_given) cfg.r = cfg.p;

  if (!(cfg.L > 0.0)) throw ConfigError("key 'L': must be > 0");
  if (cfg.n < 1) throw ConfigError("key 'n': must be >= 1");
  if (!(cfg.p >= 2.0)) throw ConfigError("key 'p': must be >= 2");
  if (!(cfg.r >= cfg.p)) throw ConfigError("key 'r': must be >= p");
  if (cfg.epsilon < 0.0 || cfg.epsilon > 1.0)
    throw ConfigError("key 'epsilon': must lie in [0, 1]");
  if (cfg.gamma < 0.0) throw ConfigError("key 'gamma': must be >= 0");
  if (!(cfg.tau > 0.0)) throw ConfigError("key 'tau': must be > 0");
  if (!(cfg.b > 0.0)) throw ConfigError("key 'b': must be > 0");
  if (cfg.tau > cfg.b * (1.0 + 1e-12))
    throw ConfigError("key 'tau': must not exceed the horizon b");
  if (!(cfg.newton_tol > 0.0))
    throw ConfigError("key 'newton_tol': must be > 0");
  if (cfg.newton_max_iter < 1)
    throw ConfigError("key 'newton_max_iter': must be >= 1");
  if (cfg.workers < 0) throw ConfigError("key 'workers': must be >= 0");
  return cfg;
}

} // namespace viscowave
