#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "viscowave/scenarios.hpp"
#include "viscowave/stepper.hpp"

/// Flat key=value configuration. Precedence: preset defaults, then the
/// config file, then command-line overrides.
///
/// Keys: L, n, p, r, epsilon, gamma, eta, tau, b, scheme, selection,
/// newton_tol, newton_max_iter, preset, u0, u1, seed, workers.
namespace viscowave {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct Config {
  std::string preset = "klein_gordon";
  double L = 1.0;
  int n = 63;
  double p = 2.0;
  double r = 2.0;
  double epsilon = 0.01;
  double gamma = 0.0;
  double eta = 1.0;
  double tau = 1e-3;
  double b = 1.0;
  Scheme scheme = Scheme::backward_euler;
  SelectionStrategy selection = SelectionStrategy::midpoint;
  double newton_tol = 1e-11;
  int newton_max_iter = 50;
  InitialData u0, u1;
  std::uint64_t seed = 1;
  int workers = 0;

  Scenario make_scenario() const;
  SolverConfig make_solver_config() const;

  /// Canonical serialization, one key=value per line, fixed key order.
  std::string serialize() const;
};

/// Parse the file (empty path = none) and the key=value overrides, layer them
/// over the preset defaults, validate. Unknown keys and malformed or
/// out-of-range values raise ConfigError naming the key.
Config resolve_config(const std::string& config_path,
                      const std::vector<std::string>& overrides);

} // namespace viscowave
