#include "viscowave/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace viscowave {

SelectionStrategy selection_strategy_from_string(const std::string& name) {
  if (name == "lower") return SelectionStrategy::lower;
  if (name == "upper") return SelectionStrategy::upper;
  if (name == "midpoint") return SelectionStrategy::midpoint;
  if (name == "closest_to_previous")
    return SelectionStrategy::closest_to_previous;
  throw std::invalid_argument(
      "unknown selection strategy '" + name +
      "' (valid: lower, upper, midpoint, closest_to_previous)");
}

std::string to_string(SelectionStrategy s) {
  switch (s) {
    case SelectionStrategy::lower: return "lower";
    case SelectionStrategy::upper: return "upper";
    case SelectionStrategy::midpoint: return "midpoint";
    case SelectionStrategy::closest_to_previous: return "closest_to_previous";
  }
  return "?";
}

namespace {

struct Piecewise {
  std::vector<Branch> branches; // sorted by x_lo
  std::vector<double> jumps;    // sorted

  bool is_jump(double x) const {
    return std::binary_search(jumps.begin(), jumps.end(), x);
  }

  // [min, max] of branch values whose closed interval contains x.
  std::pair<double, double> envelope_at(double t, double z, double x) const {
    if (is_jump(x)) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const Branch& b : branches) {
        if (b.x_lo <= x && x <= b.x_hi) {
          const double v = b.f(t, z, x);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      if (lo > hi)
        throw std::logic_error("piecewise envelope: no branch covers a jump");
      return {lo, hi};
    }
    for (const Branch& b : branches) {
      if (b.x_lo <= x && x <= b.x_hi) {
        const double v = b.f(t, z, x);
        return {v, v};
      }
    }
    throw std::logic_error("piecewise envelope: branches do not cover x");
  }
};

void validate_branches(const Piecewise& pw) {
  const auto& br = pw.branches;
  if (br.empty())
    throw std::invalid_argument("envelope_from_piecewise: no branches");
  if (br.front().x_lo != -std::numeric_limits<double>::infinity() ||
      br.back().x_hi != std::numeric_limits<double>::infinity())
    throw std::invalid_argument(
        "envelope_from_piecewise: branches must cover the real line");
  for (std::size_t k = 0; k + 1 < br.size(); ++k) {
    if (br[k].x_hi < br[k + 1].x_lo)
      throw std::invalid_argument(
          "envelope_from_piecewise: gap between branches");
    if (br[k].x_hi > br[k + 1].x_lo) {
      // Interior overlap is allowed only if the branches agree there.
      const double mid = 0.5 * (std::max(br[k].x_lo, br[k + 1].x_lo) +
                                std::min(br[k].x_hi, br[k + 1].x_hi));
      for (double t : {0.0, 0.5, 1.0})
        for (double z : {0.25, 0.75})
          if (br[k].f(t, z, mid) != br[k + 1].f(t, z, mid))
            throw std::invalid_argument(
                "envelope_from_piecewise: overlapping branches with "
                "contradictory values");
    }
  }
}

} // namespace

ForcingEnvelope envelope_from_piecewise(
    std::vector<Branch> branches, std::vector<double> jumps, double gamma,
    std::function<double(double, double)> growth_a2) {
  auto pw = std::make_shared<Piecewise>();
  pw->branches = std::move(branches);
  std::sort(pw->branches.begin(), pw->branches.end(),
            [](const Branch& a, const Branch& b) { return a.x_lo < b.x_lo; });
  pw->jumps = std::move(jumps);
  std::sort(pw->jumps.begin(), pw->jumps.end());
  validate_branches(*pw);

  ForcingEnvelope env;
  env.f_lower = [pw](double t, double z, double x) {
    return pw->envelope_at(t, z, x).first;
  };
  env.f_upper = [pw](double t, double z, double x) {
    return pw->envelope_at(t, z, x).second;
  };
  env.gamma = gamma;
  env.growth_a2 = std::move(growth_a2);
  return env;
}

GridFunction select(double t, const GridFunction& u, const GridFunction& v,
                    const GridFunction* prev, const ForcingEnvelope& env,
                    SelectionStrategy strategy) {
  if (!(u.grid() == v.grid()))
    throw std::invalid_argument("select: u and v on different grids");
  if (strategy == SelectionStrategy::closest_to_previous && prev == nullptr)
    strategy = SelectionStrategy::midpoint; // documented fallback

  const SpatialGrid& grid = u.grid();
  GridFunction g = GridFunction::zeros(grid, Space::primal);
  for (int i = 0; i < grid.n(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    const double z = grid.node(i);
    const double lo = env.f_lower(t, z, u[k]);
    const double hi = env.f_upper(t, z, u[k]);
    const double drift = env.gamma * v[k];
    double sel = 0.0;
    switch (strategy) {
      case SelectionStrategy::lower: sel = lo; break;
      case SelectionStrategy::upper: sel = hi; break;
      case SelectionStrategy::midpoint: sel = 0.5 * (lo + hi); break;
      case SelectionStrategy::closest_to_previous:
        sel = std::clamp((*prev)[k] - drift, lo, hi);
        break;
    }
    g[k] = sel + drift;
  }
  return g;
}

double assembled_a2_bar(const ForcingEnvelope& env, const SpatialGrid& grid,
                        double t) {
  double a2_sup = 0.0;
  for (int i = 0; i < grid.n(); ++i)
    a2_sup = std::max(a2_sup, env.growth_a2(t, grid.node(i)));
  const double root_l = std::sqrt(grid.length());
  return std::max(std::sqrt(2.0) * a2_sup * std::max(root_l, 1.0), env.gamma);
}

GrowthCheck growth_bound_check(double t, const GridFunction& u,
                               const GridFunction& v, const GridFunction& g,
                               const ForcingEnvelope& env) {
  GrowthCheck out;
  out.realized = h_norm(g);
  out.bound =
      assembled_a2_bar(env, u.grid(), t) * (1.0 + h_norm(u) + h_norm(v));
  out.margin = out.bound - out.realized;
  out.pass = out.margin >= 0.0;
  return out;
}

std::vector<std::string> forcing_keys() {
  return {"identity", "sine_gordon", "relay", "zero"};
}

ForcingEnvelope make_forcing(const std::string& key, double eta,
                             double gamma) {
  const double inf = std::numeric_limits<double>::infinity();
  if (key == "identity") {
    return envelope_from_piecewise(
        {{-inf, inf, [](double, double, double x) { return x; }}}, {}, gamma,
        [](double, double) { return 1.0; });
  }
  if (key == "sine_gordon") {
    return envelope_from_piecewise(
        {{-inf, inf,
          [eta](double, double, double x) { return eta * std::sin(x); }}},
        {}, gamma, [eta](double, double) { return eta; });
  }
  if (key == "relay") {
    return envelope_from_piecewise(
        {{-inf, 0.0, [](double, double, double) { return -1.0; }},
         {0.0, inf, [](double, double, double) { return 1.0; }}},
        {0.0}, gamma, [](double, double) { return 1.0; });
  }
  if (key == "zero") {
    return envelope_from_piecewise(
        {{-inf, inf, [](double, double, double) { return 0.0; }}}, {}, gamma,
        [](double, double) { return 0.0; });
  }
  std::string names;
  for (const std::string& k : forcing_keys())
    names += (names.empty() ? "" : ", ") + k;
  throw std::invalid_argument("unknown forcing '" + key + "' (valid: " +
                              names + ")");
}

} // namespace viscowave
