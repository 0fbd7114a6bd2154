#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "support.hpp"
#include "viscowave/forcing.hpp"

using namespace viscowave;
using testsupport::random_uniform;

namespace {
const double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("relay fill-in: [-1, 1] at the jump, single-valued elsewhere") {
  const ForcingEnvelope env = make_forcing("relay", 1.0, 0.0);
  CHECK(env.f_lower(0.0, 0.5, 0.0) == -1.0);
  CHECK(env.f_upper(0.0, 0.5, 0.0) == 1.0);
  CHECK(env.f_lower(0.0, 0.5, 0.3) == 1.0);
  CHECK(env.f_upper(0.0, 0.5, 0.3) == 1.0);
  CHECK(env.f_lower(0.0, 0.5, -2.0) == -1.0);
  CHECK(env.f_upper(0.0, 0.5, -2.0) == -1.0);
}

TEST_CASE("continuous forcings have degenerate envelopes") {
  const ForcingEnvelope id = make_forcing("identity", 1.0, 0.0);
  const ForcingEnvelope sg = make_forcing("sine_gordon", 2.5, 0.0);
  for (double x : {-3.0, -0.1, 0.0, 0.7, 11.0}) {
    CHECK(id.f_lower(0.1, 0.2, x) == x);
    CHECK(id.f_upper(0.1, 0.2, x) == x);
    CHECK(sg.f_lower(0.1, 0.2, x) == 2.5 * std::sin(x));
    CHECK(sg.f_upper(0.1, 0.2, x) == 2.5 * std::sin(x));
  }
}

TEST_CASE("envelope_from_piecewise validation") {
  auto one = [](double, double, double) { return 1.0; };
  auto two = [](double, double, double) { return 2.0; };
  auto a2 = [](double, double) { return 2.0; };

  // gap
  CHECK_THROWS_AS(envelope_from_piecewise(
                      {{-inf, 0.0, one}, {1.0, inf, one}}, {}, 0.0, a2),
                  std::invalid_argument);
  // contradictory interior overlap
  CHECK_THROWS_AS(envelope_from_piecewise(
                      {{-inf, 1.0, one}, {0.0, inf, two}}, {}, 0.0, a2),
                  std::invalid_argument);
  // agreeing overlap is fine
  CHECK_NOTHROW(envelope_from_piecewise({{-inf, 1.0, one}, {0.0, inf, one}},
                                        {}, 0.0, a2));
  // not covering the line
  CHECK_THROWS_AS(
      envelope_from_piecewise({{0.0, inf, one}}, {}, 0.0, a2),
      std::invalid_argument);

  CHECK_THROWS_AS(make_forcing("nope", 1.0, 0.0), std::invalid_argument);
  try {
    make_forcing("nope", 1.0, 0.0);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    for (const std::string& key : forcing_keys())
      CHECK(what.find(key) != std::string::npos);
  }
}

TEST_CASE("selection strategies at the relay jump") {
  const SpatialGrid g(1.0, 3, 2.0);
  const GridFunction u = GridFunction::zeros(g, Space::primal); // all at jump
  const GridFunction v = GridFunction::zeros(g, Space::primal);
  const ForcingEnvelope env = make_forcing("relay", 1.0, 0.0);

  const GridFunction lo = select(0.0, u, v, nullptr, env,
                                 SelectionStrategy::lower);
  const GridFunction hi = select(0.0, u, v, nullptr, env,
                                 SelectionStrategy::upper);
  const GridFunction mid = select(0.0, u, v, nullptr, env,
                                  SelectionStrategy::midpoint);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(lo[i] == -1.0);
    CHECK(hi[i] == 1.0);
    CHECK(mid[i] == 0.0);
  }

  // closest_to_previous falls back to midpoint without a previous selection
  const GridFunction fb = select(0.0, u, v, nullptr, env,
                                 SelectionStrategy::closest_to_previous);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(fb[i] == mid[i]);

  // with a previous selection it projects onto the interval
  GridFunction prev(g, {0.4, -3.0, 3.0}, Space::primal);
  const GridFunction cl = select(0.0, u, v, &prev, env,
                                 SelectionStrategy::closest_to_previous);
  CHECK(cl[0] == 0.4);
  CHECK(cl[1] == -1.0);
  CHECK(cl[2] == 1.0);
}

TEST_CASE("gamma v term and degenerate-envelope equivalence") {
  const SpatialGrid g(1.0, 1, 2.0);
  const GridFunction u = GridFunction::zeros(g, Space::primal);
  const GridFunction v(g, {3.0}, Space::primal);
  const ForcingEnvelope env = make_forcing("zero", 1.0, 2.0); // gamma = 2

  for (SelectionStrategy s :
       {SelectionStrategy::lower, SelectionStrategy::upper,
        SelectionStrategy::midpoint, SelectionStrategy::closest_to_previous}) {
    const GridFunction sel = select(0.0, u, v, nullptr, env, s);
    CHECK(sel[0] == 6.0);
  }

  // continuous forcing: all strategies give bitwise-identical selections
  const SpatialGrid gg(1.0, 31, 2.0);
  const GridFunction uu = random_uniform(gg, Space::primal, 3);
  const GridFunction vv = random_uniform(gg, Space::primal, 4);
  const ForcingEnvelope id = make_forcing("identity", 1.0, 0.7);
  const GridFunction ref = select(0.2, uu, vv, nullptr, id,
                                  SelectionStrategy::lower);
  for (SelectionStrategy s :
       {SelectionStrategy::upper, SelectionStrategy::midpoint,
        SelectionStrategy::closest_to_previous}) {
    const GridFunction sel = select(0.2, uu, vv, &ref, id, s);
    for (std::size_t i = 0; i < uu.size(); ++i) CHECK(sel[i] == ref[i]);
  }
}

TEST_CASE("selection containment is exact") {
  const SpatialGrid g(1.0, 31, 2.0);
  const ForcingEnvelope env = make_forcing("relay", 1.0, 0.8);
  for (std::uint64_t s = 0; s < 10; ++s) {
    GridFunction u = random_uniform(g, Space::primal, 10 + s);
    if (s % 2 == 0) u[5] = 0.0; // put a node exactly on the jump
    const GridFunction v = random_uniform(g, Space::primal, 20 + s);
    const GridFunction prev = random_uniform(g, Space::primal, 30 + s);
    for (SelectionStrategy strat :
         {SelectionStrategy::lower, SelectionStrategy::upper,
          SelectionStrategy::midpoint,
          SelectionStrategy::closest_to_previous}) {
      const GridFunction sel = select(0.0, u, v, &prev, env, strat);
      for (int i = 0; i < g.n(); ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double drift = env.gamma * v[k];
        const double lo = env.f_lower(0.0, g.node(i), u[k]) + drift;
        const double hi = env.f_upper(0.0, g.node(i), u[k]) + drift;
        CHECK(lo <= sel[k]);
        CHECK(sel[k] <= hi);
      }
    }
  }
}

TEST_CASE("growth bound check") {
  const SpatialGrid g(1.0, 31, 2.0);
  const GridFunction zero = GridFunction::zeros(g, Space::primal);

  // zero data, zero forcing: bound holds with the full a2_bar margin
  const ForcingEnvelope zf = make_forcing("zero", 1.0, 0.0);
  const GrowthCheck c0 = growth_bound_check(0.0, zero, zero,
                                            select(0.0, zero, zero, nullptr,
                                                   zf,
                                                   SelectionStrategy::midpoint),
                                            zf);
  CHECK(c0.pass);
  CHECK(c0.realized == 0.0);

  // relay forcing: |g|_inf <= 1, gamma = 0
  const ForcingEnvelope relay = make_forcing("relay", 1.0, 0.0);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const GridFunction u = random_uniform(g, Space::primal, 50 + s);
    const GridFunction v = random_uniform(g, Space::primal, 60 + s);
    const GridFunction sel =
        select(0.1, u, v, nullptr, relay, SelectionStrategy::upper);
    CHECK(growth_bound_check(0.1, u, v, sel, relay).pass);
  }

  // pure gamma v forcing: tight up to constants as |v| grows
  const ForcingEnvelope drift = make_forcing("zero", 1.0, 2.0);
  for (double scale : {1.0, 10.0, 100.0}) {
    const GridFunction v = scale * random_uniform(g, Space::primal, 77);
    const GridFunction sel =
        select(0.0, zero, v, nullptr, drift, SelectionStrategy::midpoint);
    const GrowthCheck c = growth_bound_check(0.0, zero, v, sel, drift);
    CHECK(c.pass);
    CHECK(c.realized == doctest::Approx(2.0 * h_norm(v)).epsilon(1e-13));
    CHECK(c.bound <= 2.0 * (1.0 + h_norm(v)) * (1.0 + 1e-13));
  }
}

TEST_CASE("strategy name round trip") {
  for (SelectionStrategy s :
       {SelectionStrategy::lower, SelectionStrategy::upper,
        SelectionStrategy::midpoint, SelectionStrategy::closest_to_previous})
    CHECK(selection_strategy_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(selection_strategy_from_string("median"),
                  std::invalid_argument);
}
