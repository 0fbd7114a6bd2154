#include "viscowave/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace viscowave {

GridFunction InitialData::realize(const SpatialGrid& grid) const {
  GridFunction out = GridFunction::zeros(grid, Space::primal);
  switch (kind) {
    case Kind::zero:
      break;
    case Kind::sine_mode: {
      const double k = mode * std::numbers::pi / grid.length();
      for (int i = 0; i < grid.n(); ++i)
        out[static_cast<std::size_t>(i)] =
            amplitude * std::sin(k * grid.node(i));
      break;
    }
    case Kind::gaussian: {
      for (int i = 0; i < grid.n(); ++i) {
        const double d = (grid.node(i) - center) / width;
        out[static_cast<std::size_t>(i)] = amplitude * std::exp(-0.5 * d * d);
      }
      break;
    }
  }
  return out;
}

InitialData InitialData::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty())
    throw std::invalid_argument("initial data: empty descriptor");

  InitialData d;
  try {
    if (parts[0] == "zero" && parts.size() == 1) {
      d.kind = Kind::zero;
      return d;
    }
    if (parts[0] == "sine_mode" && parts.size() == 3) {
      d.kind = Kind::sine_mode;
      d.mode = std::stod(parts[1]);
      d.amplitude = std::stod(parts[2]);
      return d;
    }
    if (parts[0] == "gaussian" && parts.size() == 4) {
      d.kind = Kind::gaussian;
      d.center = std::stod(parts[1]);
      d.width = std::stod(parts[2]);
      d.amplitude = std::stod(parts[3]);
      if (!(d.width > 0.0))
        throw std::invalid_argument("gaussian width must be positive");
      return d;
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    // fall through to the format error below
  }
  throw std::invalid_argument(
      "initial data '" + text +
      "': expected zero, sine_mode:<mode>:<amp> or "
      "gaussian:<center>:<width>:<amp>");
}

std::string InitialData::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::zero: os << "zero"; break;
    case Kind::sine_mode: os << "sine_mode:" << mode << ':' << amplitude; break;
    case Kind::gaussian:
      os << "gaussian:" << center << ':' << width << ':' << amplitude;
      break;
  }
  return os.str();
}

namespace {

std::function<double(double, double)> coeff_from_kind(const std::string& kind) {
  if (kind == "zero") return [](double, double) { return 0.0; };
  if (kind == "one") return [](double, double) { return 1.0; };
  throw std::invalid_argument("unknown viscosity coefficient kind '" + kind +
                              "'");
}

std::function<double(double)> beta_from_kind(const std::string& kind) {
  if (kind == "zero") return [](double) { return 0.0; };
  if (kind == "one") return [](double) { return 1.0; };
  throw std::invalid_argument("unknown beta coefficient kind '" + kind + "'");
}

// Sampled checks of the standing assumptions: a >= 0, beta >= 0, envelope
// ordering, and the (1 + |x|) growth cap, on a small lattice.
void check_hypotheses(const Scenario& s) {
  const SpatialGrid grid = s.make_grid();
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    for (int e = 0; e <= grid.n(); ++e)
      if (s.vspec.coeff_a(t, grid.edge_midpoint(e)) < 0.0)
        throw std::invalid_argument("scenario '" + s.name +
                                    "': coefficient a must be nonnegative");
  }
  for (int i = 0; i < grid.n(); ++i)
    if (s.vspec.beta(grid.node(i)) < 0.0)
      throw std::invalid_argument("scenario '" + s.name +
                                  "': beta must be nonnegative");
  for (double t : {0.0, 0.5, 1.0}) {
    for (int i = 0; i < grid.n(); i += 7) {
      const double z = grid.node(i);
      for (double x : {-10.0, -1.0, -0.5, 0.0, 0.5, 1.0, 10.0}) {
        const double lo = s.env.f_lower(t, z, x);
        const double hi = s.env.f_upper(t, z, x);
        if (lo > hi)
          throw std::invalid_argument("scenario '" + s.name +
                                      "': envelope ordering violated");
        const double cap = s.env.growth_a2(t, z) * (1.0 + std::abs(x));
        if (std::abs(lo) > cap || std::abs(hi) > cap)
          throw std::invalid_argument("scenario '" + s.name +
                                      "': envelope growth bound violated");
      }
    }
  }
}

} // namespace

std::vector<std::string> preset_names() {
  return {"klein_gordon", "sine_gordon", "relay", "viscous_plap", "zero"};
}

Scenario build_scenario(const std::string& preset_name, double L, int n,
                        double p, double eta, double gamma,
                        const InitialData& u0, const InitialData& u1) {
  Scenario s;
  s.name = preset_name;
  s.L = L;
  s.n = n;
  s.p = p;
  s.eta = eta;
  s.gamma = gamma;
  s.u0 = u0;
  s.u1 = u1;

  if (preset_name == "klein_gordon") {
    s.forcing = "identity";
    s.a_kind = "zero";
    s.beta_kind = "zero";
    const double k = std::numbers::pi / L;
    const double omega_sq = k * k - 1.0;
    if (omega_sq > 0.0) {
      const double omega = std::sqrt(omega_sq);
      const double amp = u0.amplitude;
      s.has_expected = true;
      s.expected = [omega, k, amp](double t, double z) {
        return amp * std::cos(omega * t) * std::sin(k * z);
      };
    }
  } else if (preset_name == "sine_gordon") {
    s.forcing = "sine_gordon";
    s.a_kind = "zero";
    s.beta_kind = "zero";
  } else if (preset_name == "relay") {
    s.forcing = "relay";
    s.a_kind = "one";
    s.beta_kind = "zero";
  } else if (preset_name == "viscous_plap") {
    s.forcing = "identity";
    s.a_kind = "one";
    s.beta_kind = "one";
  } else if (preset_name == "zero") {
    s.forcing = "zero";
    s.a_kind = "zero";
    s.beta_kind = "zero";
  } else {
    std::string names;
    for (const std::string& nm : preset_names())
      names += (names.empty() ? "" : ", ") + nm;
    throw std::invalid_argument("unknown preset '" + preset_name +
                                "' (valid: " + names + ")");
  }

  s.vspec.coeff_a = coeff_from_kind(s.a_kind);
  s.vspec.beta = beta_from_kind(s.beta_kind);
  s.vspec.p = p;
  s.env = make_forcing(s.forcing, eta, gamma);
  check_hypotheses(s);
  return s;
}

Scenario preset(const std::string& name) {
  if (name == "klein_gordon")
    return build_scenario(name, 1.0, 63, 2.0, 1.0, 0.0,
                          InitialData{InitialData::Kind::sine_mode, 1.0, 1.0},
                          InitialData{});
  if (name == "sine_gordon")
    return build_scenario(name, 1.0, 63, 2.0, 1.0, 0.0,
                          InitialData{InitialData::Kind::sine_mode, 1.0, 1.0},
                          InitialData{});
  if (name == "relay") {
    InitialData kick;
    kick.kind = InitialData::Kind::gaussian;
    kick.center = 0.5;
    kick.width = 0.1;
    kick.amplitude = 1.0;
    return build_scenario(name, 1.0, 63, 2.0, 1.0, 0.5, InitialData{}, kick);
  }
  if (name == "viscous_plap")
    return build_scenario(name, 1.0, 63, 3.0, 1.0, 0.5,
                          InitialData{InitialData::Kind::sine_mode, 1.0, 1.0},
                          InitialData{InitialData::Kind::sine_mode, 2.0, 0.5});
  if (name == "zero")
    return build_scenario(name, 1.0, 63, 2.0, 1.0, 0.0, InitialData{},
                          InitialData{});
  // delegate for the error message listing valid names
  return build_scenario(name, 1.0, 63, 2.0, 1.0, 0.0, InitialData{},
                        InitialData{});
}

double reference_error(const TrajectoryRecord& traj,
                       const Scenario& scenario) {
  if (!scenario.has_expected)
    throw std::invalid_argument("reference_error: scenario '" + scenario.name +
                                "' has no closed-form reference");
  double worst = 0.0;
  for (const State& s : traj.states) {
    GridFunction ref = GridFunction::zeros(traj.grid, Space::primal);
    for (int i = 0; i < traj.grid.n(); ++i)
      ref[static_cast<std::size_t>(i)] =
          scenario.expected(s.t, traj.grid.node(i));
    worst = std::max(worst, h_norm(s.u - ref));
  }
  return worst;
}

} // namespace viscowave
