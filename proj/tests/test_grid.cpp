#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "viscowave/grid.hpp"
#include "viscowave/operators.hpp"

using namespace viscowave;
using testsupport::random_uniform;

TEST_CASE("grid construction and invariants") {
  const SpatialGrid g(1.0, 63, 2.0);
  CHECK(g.h() * 64.0 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.node(0) == doctest::Approx(g.h()));
  CHECK(g.edge_midpoint(0) == doctest::Approx(0.5 * g.h()));

  CHECK_THROWS_AS(SpatialGrid(1.0, 0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(SpatialGrid(1.0, 4, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(SpatialGrid(-1.0, 4, 2.0), std::invalid_argument);

  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(5, 0.0), Space::primal),
                  std::invalid_argument);
}

TEST_CASE("h_norm") {
  const SpatialGrid g1(1.0, 1, 2.0);
  CHECK(h_norm(GridFunction::zeros(g1, Space::primal)) == 0.0);

  GridFunction y(g1, {1.0}, Space::primal);
  CHECK(h_norm(y) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  const SpatialGrid g(1.0, 31, 2.0);
  const GridFunction z = random_uniform(g, Space::primal, 42);
  CHECK(h_norm(z) == doctest::Approx(h_norm(-1.0 * z)).epsilon(1e-15));

  CHECK_THROWS_AS(h_norm(z.with_space(Space::dual)), std::invalid_argument);
}

TEST_CASE("x_norm hand values and homogeneity") {
  const SpatialGrid g3(1.0, 1, 3.0);
  CHECK(x_norm(GridFunction::zeros(g3, Space::primal)) == 0.0);
  CHECK(x_norm(GridFunction(g3, {1.0}, Space::primal)) ==
        doctest::Approx(2.0).epsilon(1e-15));

  const SpatialGrid g2(1.0, 1, 2.0);
  CHECK(x_norm(GridFunction(g2, {1.0}, Space::primal)) ==
        doctest::Approx(2.0).epsilon(1e-15));

  for (double p : {2.0, 2.5, 3.0, 4.0}) {
    const SpatialGrid g(1.0, 31, p);
    const GridFunction y = random_uniform(g, Space::primal, 7);
    for (double alpha : {-3.0, -0.125, 0.5, 2.0}) {
      CHECK(x_norm(alpha * y) ==
            doctest::Approx(std::abs(alpha) * x_norm(y)).epsilon(1e-13));
    }
  }
}

TEST_CASE("dual_pair") {
  const SpatialGrid g(1.0, 1, 2.0);
  const GridFunction y(g, {1.0}, Space::primal);
  const GridFunction gf(g, {8.0}, Space::dual);
  CHECK(dual_pair(GridFunction::zeros(g, Space::dual), y) == 0.0);
  CHECK(dual_pair(gf, y) == doctest::Approx(4.0).epsilon(1e-15));

  // symmetry of the formula under tag swap
  CHECK(dual_pair(gf, y) ==
        dual_pair(y.with_space(Space::dual), gf.with_space(Space::primal)));

  // bilinearity
  const SpatialGrid gg(1.0, 15, 2.0);
  const GridFunction a = random_uniform(gg, Space::dual, 1);
  const GridFunction b = random_uniform(gg, Space::dual, 2);
  const GridFunction w = random_uniform(gg, Space::primal, 3);
  CHECK(dual_pair(a + b, w) ==
        doctest::Approx(dual_pair(a, w) + dual_pair(b, w)).epsilon(1e-13));

  const SpatialGrid other(2.0, 1, 2.0);
  CHECK_THROWS_AS(
      dual_pair(gf, GridFunction::zeros(other, Space::primal)),
      std::invalid_argument);
  CHECK_THROWS_AS(dual_pair(y, gf), std::invalid_argument); // tags swapped
}

TEST_CASE("dual_norm_upper") {
  const SpatialGrid g(1.0, 1, 3.0);
  CHECK(dual_norm_upper(GridFunction::zeros(g, Space::dual), 8, 1) == 0.0);

  // J_3 of y = (1): every unit direction on a one-node grid attains the
  // analytic dual norm ||y||^2 = 4.
  const GridFunction y(g, {1.0}, Space::primal);
  const GridFunction jp = apply_Jp(y, 3.0);
  const double est = dual_norm_upper(jp, 4, 99);
  CHECK(est == doctest::Approx(4.0).epsilon(1e-12));

  // more samples never decrease the estimate (same seed = same draw prefix)
  const SpatialGrid gg(1.0, 31, 2.0);
  const GridFunction d = random_uniform(gg, Space::dual, 5);
  const double e1 = dual_norm_upper(d, 10, 7);
  const double e2 = dual_norm_upper(d, 20, 7);
  CHECK(e2 >= e1);

  CHECK_THROWS_AS(dual_norm_upper(d, 0, 7), std::invalid_argument);
}

TEST_CASE("summation by parts ties x_norm, B and the pairing together") {
  for (double p : {2.0, 3.0}) {
    const SpatialGrid g(1.5, 23, p);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const GridFunction y = random_uniform(g, Space::primal, 100 + s);
      const GridFunction w = random_uniform(g, Space::primal, 200 + s);
      double edges = 0.0;
      for (int e = 0; e <= g.n(); ++e) {
        const double yl = e == 0 ? 0.0 : y[static_cast<std::size_t>(e - 1)];
        const double yr = e == g.n() ? 0.0 : y[static_cast<std::size_t>(e)];
        const double wl = e == 0 ? 0.0 : w[static_cast<std::size_t>(e - 1)];
        const double wr = e == g.n() ? 0.0 : w[static_cast<std::size_t>(e)];
        edges += g.h() * (yr - yl) / g.h() * ((wr - wl) / g.h());
      }
      const double pair = dual_pair(apply_B(y), w);
      CHECK(std::abs(edges - pair) <= 1e-12 * std::max(1.0, std::abs(edges)));
    }
  }
}

TEST_CASE("embedding constant: sampled ratio stays under the certified bound") {
  for (double p : {2.0, 2.5, 3.0, 4.0}) {
    const SpatialGrid g(1.0, 31, p);
    const double bound = poincare_embedding_bound(g);
    CHECK(sampled_embedding_ratio(g, 200, 11) <= bound);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const GridFunction y = random_uniform(g, Space::primal, 300 + s);
      CHECK(h_norm(y) <= bound * x_norm(y) * (1.0 + 1e-12));
    }
  }
}
