#pragma once

#include <cstddef>
#include <span>

/// Low-level array kernels shared by the grid and operator layers.
///
/// The default entry points are OpenMP-parallel for large arrays and fall
/// back to the same blocked arithmetic below the grain threshold, so results
/// are bitwise independent of the thread count. Reductions accumulate fixed
/// 4096-element blocks in index order; elementwise kernels write each output
/// slot independently.
///
/// `kernels::serial` holds a naive reference implementation of every kernel.
/// It is kept for tests (cross-checks against the parallel path) and for the
/// bench tool; production code always goes through the default versions.
namespace viscowave::kernels {

/// Grain size below which kernels stay on the calling thread.
inline constexpr std::size_t parallel_threshold = 32768;

/// Dot product sum(a[i] * b[i]). Blocked, deterministic.
double dot(std::span<const double> a, std::span<const double> b);

/// sum over edges e = 0..n of |D_e|^p with D_e = (y[e] - y[e-1]) * inv_h
/// and homogeneous ghost values y[-1] = y[n] = 0.
double grad_pow_sum(std::span<const double> y, double inv_h, double p);

/// out[i] = (2 y[i] - y[i-1] - y[i+1]) * inv_h2, homogeneous ghosts.
void neg_laplacian(std::span<const double> y, double inv_h2,
                   std::span<double> out);

/// flux[e] = a[e] * psi(D_e) for edges e = 0..n, psi(s) = |s|^{p-2} s.
/// Pass an empty `edge_a` for a == 1.
void edge_flux(std::span<const double> y, double inv_h, double p,
               std::span<const double> edge_a, std::span<double> flux);

/// out[i] = (flux[i] - flux[i+1]) * inv_h + beta[i] * y[i].
/// Pass an empty `beta` for beta == 0.
void flux_divergence(std::span<const double> flux, double inv_h,
                     std::span<const double> beta, std::span<const double> y,
                     std::span<double> out);

/// out[e] = a[e] * psi'(D_e) with psi'(s) = (p-1)|s|^{p-2}; edges as above.
void psi_prime_edges(std::span<const double> y, double inv_h, double p,
                     std::span<const double> edge_a, std::span<double> out);

/// y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// out[i] = a * x[i] + b * y[i]
void axpby(double a, std::span<const double> x, double b,
           std::span<const double> y, std::span<double> out);

/// psi(s) = |s|^{p-2} s with psi(0) = 0 pinned (guards 0^negative for p = 2).
double psi(double s, double p);

/// psi'(s) = (p-1) |s|^{p-2}; at s = 0 this is p-1 for p = 2 and 0 for p > 2.
double psi_prime(double s, double p);

namespace serial {

double dot(std::span<const double> a, std::span<const double> b);
double grad_pow_sum(std::span<const double> y, double inv_h, double p);
void neg_laplacian(std::span<const double> y, double inv_h2,
                   std::span<double> out);
void edge_flux(std::span<const double> y, double inv_h, double p,
               std::span<const double> edge_a, std::span<double> flux);
void flux_divergence(std::span<const double> flux, double inv_h,
                     std::span<const double> beta, std::span<const double> y,
                     std::span<double> out);
void psi_prime_edges(std::span<const double> y, double inv_h, double p,
                     std::span<const double> edge_a, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpby(double a, std::span<const double> x, double b,
           std::span<const double> y, std::span<double> out);

} // namespace serial

} // namespace viscowave::kernels
