#include "viscowave/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace viscowave::kernels {

namespace {

constexpr std::size_t kBlock = 4096;

// Fixed-block reduction: per-block partial sums (parallel over blocks),
// combined in block order. The summation order never depends on the thread
// count, so results are reproducible run to run.
template <typename Term>
double blocked_sum(std::size_t n, Term term) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks == 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += term(i);
    return s;
  }
  std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

inline double ghosted(std::span<const double> y, std::ptrdiff_t i) {
  if (i < 0 || i >= static_cast<std::ptrdiff_t>(y.size())) return 0.0;
  return y[static_cast<std::size_t>(i)];
}

} // namespace

double psi(double s, double p) {
  if (s == 0.0) return 0.0;
  if (p == 2.0) return s;
  return std::pow(std::abs(s), p - 2.0) * s;
}

double psi_prime(double s, double p) {
  if (p == 2.0) return 1.0;
  if (s == 0.0) return 0.0;
  return (p - 1.0) * std::pow(std::abs(s), p - 2.0);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double grad_pow_sum(std::span<const double> y, double inv_h, double p) {
  const std::size_t n = y.size();
  return blocked_sum(n + 1, [&](std::size_t e) {
    const double d =
        (ghosted(y, static_cast<std::ptrdiff_t>(e)) -
         ghosted(y, static_cast<std::ptrdiff_t>(e) - 1)) *
        inv_h;
    return std::pow(std::abs(d), p);
  });
}

void neg_laplacian(std::span<const double> y, double inv_h2,
                   std::span<double> out) {
  assert(out.size() == y.size());
  const std::int64_t n = static_cast<std::int64_t>(y.size());
#pragma omp parallel for schedule(static) if (y.size() >= parallel_threshold)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        (2.0 * y[static_cast<std::size_t>(i)] - ghosted(y, i - 1) -
         ghosted(y, i + 1)) *
        inv_h2;
  }
}

void edge_flux(std::span<const double> y, double inv_h, double p,
               std::span<const double> edge_a, std::span<double> flux) {
  const std::int64_t ne = static_cast<std::int64_t>(y.size()) + 1;
  assert(flux.size() == static_cast<std::size_t>(ne));
  assert(edge_a.empty() || edge_a.size() == static_cast<std::size_t>(ne));
#pragma omp parallel for schedule(static) if (flux.size() >= parallel_threshold)
  for (std::int64_t e = 0; e < ne; ++e) {
    const double d = (ghosted(y, e) - ghosted(y, e - 1)) * inv_h;
    const double a = edge_a.empty() ? 1.0 : edge_a[static_cast<std::size_t>(e)];
    flux[static_cast<std::size_t>(e)] = a * psi(d, p);
  }
}

void flux_divergence(std::span<const double> flux, double inv_h,
                     std::span<const double> beta, std::span<const double> y,
                     std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(y.size());
  assert(flux.size() == y.size() + 1);
  assert(out.size() == y.size());
  assert(beta.empty() || beta.size() == y.size());
#pragma omp parallel for schedule(static) if (y.size() >= parallel_threshold)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    double v = (flux[u] - flux[u + 1]) * inv_h;
    if (!beta.empty()) v += beta[u] * y[u];
    out[u] = v;
  }
}

void psi_prime_edges(std::span<const double> y, double inv_h, double p,
                     std::span<const double> edge_a, std::span<double> out) {
  const std::int64_t ne = static_cast<std::int64_t>(y.size()) + 1;
  assert(out.size() == static_cast<std::size_t>(ne));
#pragma omp parallel for schedule(static) if (out.size() >= parallel_threshold)
  for (std::int64_t e = 0; e < ne; ++e) {
    const double d = (ghosted(y, e) - ghosted(y, e - 1)) * inv_h;
    const double a = edge_a.empty() ? 1.0 : edge_a[static_cast<std::size_t>(e)];
    out[static_cast<std::size_t>(e)] = a * psi_prime(d, p);
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= parallel_threshold)
  for (std::int64_t i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
  }
}

void axpby(double a, std::span<const double> x, double b,
           std::span<const double> y, std::span<double> out) {
  assert(x.size() == y.size() && x.size() == out.size());
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= parallel_threshold)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    out[u] = a * x[u] + b * y[u];
  }
}

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double grad_pow_sum(std::span<const double> y, double inv_h, double p) {
  const std::size_t n = y.size();
  double s = 0.0;
  for (std::size_t e = 0; e <= n; ++e) {
    const double left = e == 0 ? 0.0 : y[e - 1];
    const double right = e == n ? 0.0 : y[e];
    s += std::pow(std::abs((right - left) * inv_h), p);
  }
  return s;
}

void neg_laplacian(std::span<const double> y, double inv_h2,
                   std::span<double> out) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? 0.0 : y[i - 1];
    const double right = i + 1 == n ? 0.0 : y[i + 1];
    out[i] = (2.0 * y[i] - left - right) * inv_h2;
  }
}

void edge_flux(std::span<const double> y, double inv_h, double p,
               std::span<const double> edge_a, std::span<double> flux) {
  const std::size_t n = y.size();
  for (std::size_t e = 0; e <= n; ++e) {
    const double left = e == 0 ? 0.0 : y[e - 1];
    const double right = e == n ? 0.0 : y[e];
    const double a = edge_a.empty() ? 1.0 : edge_a[e];
    flux[e] = a * psi((right - left) * inv_h, p);
  }
}

void flux_divergence(std::span<const double> flux, double inv_h,
                     std::span<const double> beta, std::span<const double> y,
                     std::span<double> out) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = (flux[i] - flux[i + 1]) * inv_h;
    if (!beta.empty()) out[i] += beta[i] * y[i];
  }
}

void psi_prime_edges(std::span<const double> y, double inv_h, double p,
                     std::span<const double> edge_a, std::span<double> out) {
  const std::size_t n = y.size();
  for (std::size_t e = 0; e <= n; ++e) {
    const double left = e == 0 ? 0.0 : y[e - 1];
    const double right = e == n ? 0.0 : y[e];
    const double a = edge_a.empty() ? 1.0 : edge_a[e];
    out[e] = a * psi_prime((right - left) * inv_h, p);
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void axpby(double a, std::span<const double> x, double b,
           std::span<const double> y, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
}

} // namespace serial

} // namespace viscowave::kernels
