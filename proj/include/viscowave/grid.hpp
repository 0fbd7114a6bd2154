#pragma once

#include <cstdint>
#include <span>
#include <vector>

/// Discrete realization of the evolution triple
///
///   (X, H, X*) = (W^{1,p}_0(0,L), L^2(0,L), W^{-1,p'}(0,L))
///
/// on a uniform Dirichlet grid with n interior nodes and spacing h = L/(n+1).
/// Nodal vectors carry a space tag: `primal` for elements of X or H, `dual`
/// for functionals represented in the same nodal basis through the h-weighted
/// pairing <g, y> = h * sum_i g_i y_i. On the grid that pairing restricted to
/// primal x primal *is* the H inner product, which is what makes the tag a
/// bookkeeping device rather than a change of basis.
///
/// The X-norm is the gradient-only seminorm ||Dy||_p (a norm on the Dirichlet
/// space), so scaling identities for the p-Laplacian and the duality map hold
/// exactly in floating point up to roundoff.
namespace viscowave {

enum class Space { primal, dual };

class SpatialGrid {
 public:
  /// Domain (0, length) with `interior_nodes` unknowns; `sobolev_p` >= 2.
  SpatialGrid(double length, int interior_nodes, double sobolev_p);

  double length() const { return length_; }
  int n() const { return n_; }
  double h() const { return h_; }
  double p() const { return p_; }

  /// Coordinate of interior node i (storage index, 0-based): z = (i+1) h.
  double node(int i) const { return h_ * static_cast<double>(i + 1); }
  /// Midpoint of edge e, e = 0..n: z = (e + 1/2) h.
  double edge_midpoint(int e) const {
    return h_ * (static_cast<double>(e) + 0.5);
  }

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  double length_;
  int n_;
  double h_;
  double p_;
};

/// Immutable-by-convention nodal vector on a SpatialGrid. Boundary values are
/// implicitly zero and never stored.
class GridFunction {
 public:
  GridFunction(SpatialGrid grid, std::vector<double> values, Space space);
  static GridFunction zeros(const SpatialGrid& grid, Space space);

  const SpatialGrid& grid() const { return grid_; }
  Space space() const { return space_; }
  std::size_t size() const { return values_.size(); }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  /// Same nodal values under the other tag. This is the H = H*
  /// identification of the pivot space, made explicit at call sites.
  GridFunction with_space(Space space) const;

 private:
  SpatialGrid grid_;
  std::vector<double> values_;
  Space space_;
};

/// |y| = (h sum y_i^2)^{1/2}. Requires a primal argument.
double h_norm(const GridFunction& y);

/// ||y|| = (h sum_e |D_e y|^p)^{1/p} over the n+1 edges, Dirichlet ghosts.
double x_norm(const GridFunction& y);

/// <g, y> = h sum g_i y_i. Requires g dual, y primal, matching grids.
double dual_pair(const GridFunction& g, const GridFunction& y);

/// Sampled lower estimate of ||g||_* = sup_{||y||=1} <g, y>: the maximum of
/// |<g, y>| over `samples` seeded random unit-X-norm directions. Used only as
/// a monitor; the exact dual norm for p != 2 would be a convex program.
/// Doubling `samples` with the same seed extends the same draw sequence, so
/// the estimate is monotone in `samples`.
double dual_norm_upper(const GridFunction& g, int samples, std::uint64_t seed);

/// Certified Poincare-type embedding constant: |y| <= c1 ||y|| with
/// c1 = L^{1/2 + 1/p'}. Any sampled ratio must stay below this.
double poincare_embedding_bound(const SpatialGrid& grid);

/// Largest sampled ratio |y| / ||y|| over seeded random directions; a lower
/// bound for the true discrete embedding constant.
double sampled_embedding_ratio(const SpatialGrid& grid, int samples,
                               std::uint64_t seed);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double alpha, const GridFunction& y);

/// Seeded standard-normal nodal vector; the workhorse behind the sampled
/// monitors and the randomized tests.
GridFunction random_grid_function(const SpatialGrid& grid, Space space,
                                  std::uint64_t seed);

} // namespace viscowave
