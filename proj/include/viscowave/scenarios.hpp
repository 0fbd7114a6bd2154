#pragma once

#include <functional>
#include <string>
#include <vector>

#include "viscowave/forcing.hpp"
#include "viscowave/operators.hpp"
#include "viscowave/stepper.hpp"

/// Named presets binding initial data, damping coefficients and forcing.
///
///   klein_gordon  a = 0, beta = 0, gamma = 0, f(x) = x; u0 = sin(pi z),
///                 u1 = 0. Closed-form reference cos(w t) sin(pi z / L) with
///                 w = sqrt((pi/L)^2 - 1).
///   sine_gordon   as above with f(x) = eta sin x.
///   relay         f(x) = sign x with the jump at 0 filled in; a = 1,
///                 gamma = 1/2, zero displacement and a Gaussian velocity
///                 kick, so early selections actually sit inside the
///                 fill-in interval.
///   viscous_plap  a = 1, beta = 1, gamma = 1/2, f(x) = x, p = 3.
///   zero          all data and forcing zero.
namespace viscowave {

struct InitialData {
  enum class Kind { zero, sine_mode, gaussian };
  Kind kind = Kind::zero;
  double mode = 1.0;      // sine_mode: u(z) = amplitude sin(mode pi z / L)
  double amplitude = 1.0;
  double center = 0.5;    // gaussian: amplitude exp(-(z-center)^2 / 2 width^2)
  double width = 0.1;

  GridFunction realize(const SpatialGrid& grid) const;

  /// Accepts "zero", "sine_mode:<mode>:<amplitude>",
  /// "gaussian:<center>:<width>:<amplitude>".
  static InitialData parse(const std::string& text);
  std::string to_string() const;
};

struct Scenario {
  std::string name;
  double L = 1.0;
  int n = 63;
  double p = 2.0;
  double eta = 1.0;
  double gamma = 0.0;
  std::string forcing = "zero";
  std::string a_kind = "zero";    // "zero" or "one"
  std::string beta_kind = "zero"; // "zero" or "one"
  InitialData u0, u1;

  ViscositySpec vspec;
  ForcingEnvelope env;

  bool has_expected = false;
  std::function<double(double t, double z)> expected;

  SpatialGrid make_grid() const { return SpatialGrid(L, n, p); }
};

std::vector<std::string> preset_names();

/// Fully-specified scenario for a preset name; throws listing the valid
/// names otherwise. Coefficient and forcing hypotheses (a >= 0, beta >= 0,
/// envelope ordering, growth) are spot-checked on a sample lattice at build
/// time.
Scenario preset(const std::string& name);

/// Preset with overridden parameters (the CLI path). Pass NaN / negative
/// sentinel-free values straight from the resolved configuration.
Scenario build_scenario(const std::string& preset_name, double L, int n,
                        double p, double eta, double gamma,
                        const InitialData& u0, const InitialData& u1);

/// Max over recorded states of the H-norm distance to the scenario's
/// closed-form reference; errors when the scenario has none.
double reference_error(const TrajectoryRecord& traj, const Scenario& scenario);

} // namespace viscowave
