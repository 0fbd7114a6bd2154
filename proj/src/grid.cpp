#include "viscowave/grid.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "viscowave/kernels.hpp"

namespace viscowave {

SpatialGrid::SpatialGrid(double length, int interior_nodes, double sobolev_p)
    : length_(length),
      n_(interior_nodes),
      h_(length / static_cast<double>(interior_nodes + 1)),
      p_(sobolev_p) {
  if (!(length > 0.0)) throw std::invalid_argument("grid: length must be > 0");
  if (interior_nodes < 1)
    throw std::invalid_argument("grid: need at least one interior node");
  if (!(sobolev_p >= 2.0))
    throw std::invalid_argument("grid: exponent p must satisfy p >= 2");
}

GridFunction::GridFunction(SpatialGrid grid, std::vector<double> values,
                           Space space)
    : grid_(grid), values_(std::move(values)), space_(space) {
  if (values_.size() != static_cast<std::size_t>(grid_.n()))
    throw std::invalid_argument("grid function: value count != grid.n");
}

GridFunction GridFunction::zeros(const SpatialGrid& grid, Space space) {
  return GridFunction(grid, std::vector<double>(grid.n(), 0.0), space);
}

GridFunction GridFunction::with_space(Space space) const {
  return GridFunction(grid_, values_, space);
}

namespace {

void require_primal(const GridFunction& y, const char* what) {
  if (y.space() != Space::primal)
    throw std::invalid_argument(std::string(what) +
                                ": expected a primal grid function");
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument(
        "incompatible discretizations: grid functions live on different grids");
}

} // namespace

double h_norm(const GridFunction& y) {
  require_primal(y, "h_norm");
  return std::sqrt(y.grid().h() * kernels::dot(y.values(), y.values()));
}

double x_norm(const GridFunction& y) {
  require_primal(y, "x_norm");
  const double p = y.grid().p();
  const double s =
      kernels::grad_pow_sum(y.values(), 1.0 / y.grid().h(), p);
  return std::pow(y.grid().h() * s, 1.0 / p);
}

double dual_pair(const GridFunction& g, const GridFunction& y) {
  if (g.space() != Space::dual)
    throw std::invalid_argument("dual_pair: first argument must be dual");
  require_primal(y, "dual_pair");
  require_same_grid(g, y);
  return g.grid().h() * kernels::dot(g.values(), y.values());
}

namespace {

GridFunction draw_normal(const SpatialGrid& grid, Space space,
                         std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(grid.n());
  for (double& x : v) x = normal(rng);
  return GridFunction(grid, std::move(v), space);
}

} // namespace

GridFunction random_grid_function(const SpatialGrid& grid, Space space,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return draw_normal(grid, space, rng);
}

double dual_norm_upper(const GridFunction& g, int samples,
                       std::uint64_t seed) {
  if (g.space() != Space::dual)
    throw std::invalid_argument("dual_norm_upper: argument must be dual");
  if (samples <= 0)
    throw std::invalid_argument("dual_norm_upper: samples must be positive");
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    GridFunction y = draw_normal(g.grid(), Space::primal, rng);
    const double norm = x_norm(y);
    if (norm == 0.0) continue;
    const double v = std::abs(dual_pair(g, y)) / norm;
    if (v > best) best = v;
  }
  return best;
}

double poincare_embedding_bound(const SpatialGrid& grid) {
  const double p = grid.p();
  const double pprime = p / (p - 1.0);
  return std::pow(grid.length(), 0.5 + 1.0 / pprime);
}

double sampled_embedding_ratio(const SpatialGrid& grid, int samples,
                               std::uint64_t seed) {
  if (samples <= 0)
    throw std::invalid_argument("sampled_embedding_ratio: samples must be > 0");
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    GridFunction y = draw_normal(grid, Space::primal, rng);
    const double xn = x_norm(y);
    if (xn == 0.0) continue;
    best = std::max(best, h_norm(y) / xn);
  }
  return best;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  if (a.space() != b.space())
    throw std::invalid_argument("grid function sum: mixed space tags");
  GridFunction out = GridFunction::zeros(a.grid(), a.space());
  kernels::axpby(1.0, a.values(), 1.0, b.values(), out.values());
  return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  if (a.space() != b.space())
    throw std::invalid_argument("grid function difference: mixed space tags");
  GridFunction out = GridFunction::zeros(a.grid(), a.space());
  kernels::axpby(1.0, a.values(), -1.0, b.values(), out.values());
  return out;
}

GridFunction operator*(double alpha, const GridFunction& y) {
  GridFunction out = y;
  for (double& v : out.values()) v *= alpha;
  return out;
}

} // namespace viscowave
