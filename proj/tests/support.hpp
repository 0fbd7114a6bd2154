#pragma once

// Shared helpers for the test suites: seeded random vectors and a dense
// linear-algebra oracle (independent of the library's solve path) for the
// p = r = 2 instance, where one implicit step is the linear solve
//   v+ = (I + tau (1 + eps) L + tau^2 L)^{-1} (v - tau L u + tau g).

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "viscowave/grid.hpp"

namespace testsupport {

using Mat = std::vector<std::vector<double>>;

inline viscowave::GridFunction random_uniform(const viscowave::SpatialGrid& grid,
                                              viscowave::Space space,
                                              std::uint64_t seed,
                                              double lo = -1.0,
                                              double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(grid.n()));
  for (double& x : v) x = dist(rng);
  return viscowave::GridFunction(grid, std::move(v), space);
}

inline Mat dense_identity(int n) {
  Mat a(static_cast<std::size_t>(n),
        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  return a;
}

// Dense Dirichlet negative Laplacian: L[i][i] = 2/h^2, off-diagonal -1/h^2.
inline Mat dense_neg_laplacian(int n, double h) {
  Mat a(static_cast<std::size_t>(n),
        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  const double inv_h2 = 1.0 / (h * h);
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2.0 * inv_h2;
    if (i > 0)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = -inv_h2;
    if (i + 1 < n)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = -inv_h2;
  }
  return a;
}

inline std::vector<double> mat_vec(const Mat& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

// Gaussian elimination with partial pivoting; dense, for oracle use only.
inline std::vector<double> gauss_solve(Mat a, std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double m = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= m * a[col][j];
      b[row] -= m * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

struct DenseLinearModel {
  int n;
  double h, tau, eps;
  Mat laplacian;

  DenseLinearModel(int n_, double length, double tau_, double eps_)
      : n(n_),
        h(length / static_cast<double>(n_ + 1)),
        tau(tau_),
        eps(eps_),
        laplacian(dense_neg_laplacian(n_, length / (n_ + 1))) {}

  // One backward-Euler step of u'' + (1 + eps) L u' + L u = g.
  void step(std::vector<double>& u, std::vector<double>& v,
            const std::vector<double>& g) const {
    Mat sys = dense_identity(n);
    const double c = tau * (1.0 + eps) + tau * tau;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        sys[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            c * laplacian[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(j)];
    std::vector<double> rhs = mat_vec(laplacian, u);
    for (int i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      rhs[k] = v[k] - tau * rhs[k] + tau * g[k];
    }
    v = gauss_solve(std::move(sys), std::move(rhs));
    for (int i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      u[k] += tau * v[k];
    }
  }
};

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

} // namespace testsupport
