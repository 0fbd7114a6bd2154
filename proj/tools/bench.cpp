// Timing comparison of the OpenMP kernels against the serial reference.
// Prints one row per (kernel, n) with both timings and the speedup.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "viscowave/kernels.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
  fn(); // warm up
  const auto t0 = clock_type::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() /
         static_cast<double>(reps);
}

volatile double sink = 0.0;

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled (serial build)\n");
#endif
  std::printf("%-18s %10s %12s %12s %8s\n", "kernel", "n", "parallel ms",
              "serial ms", "speedup");

  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  for (std::size_t n : {std::size_t{10000}, std::size_t{100000},
                        std::size_t{1000000}, std::size_t{4000000}}) {
    std::vector<double> a(n), b(n), out(n), flux(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = dist(rng);
      b[i] = dist(rng);
    }
    const int reps = n >= 1000000 ? 5 : 40;
    const double inv_h = static_cast<double>(n + 1);

    const double t_dot =
        time_ms([&] { sink = viscowave::kernels::dot(a, b); }, reps);
    const double t_dot_s =
        time_ms([&] { sink = viscowave::kernels::serial::dot(a, b); }, reps);
    std::printf("%-18s %10zu %12.4f %12.4f %8.2f\n", "dot", n, t_dot, t_dot_s,
                t_dot_s / t_dot);

    const double t_grad = time_ms(
        [&] { sink = viscowave::kernels::grad_pow_sum(a, inv_h, 3.0); }, reps);
    const double t_grad_s = time_ms(
        [&] { sink = viscowave::kernels::serial::grad_pow_sum(a, inv_h, 3.0); },
        reps);
    std::printf("%-18s %10zu %12.4f %12.4f %8.2f\n", "grad_pow_sum(p=3)", n,
                t_grad, t_grad_s, t_grad_s / t_grad);

    const double t_lap = time_ms(
        [&] { viscowave::kernels::neg_laplacian(a, inv_h * inv_h, out); },
        reps);
    const double t_lap_s = time_ms(
        [&] {
          viscowave::kernels::serial::neg_laplacian(a, inv_h * inv_h, out);
        },
        reps);
    std::printf("%-18s %10zu %12.4f %12.4f %8.2f\n", "neg_laplacian", n, t_lap,
                t_lap_s, t_lap_s / t_lap);

    const double t_flux = time_ms(
        [&] { viscowave::kernels::edge_flux(a, inv_h, 3.0, {}, flux); }, reps);
    const double t_flux_s = time_ms(
        [&] { viscowave::kernels::serial::edge_flux(a, inv_h, 3.0, {}, flux); },
        reps);
    std::printf("%-18s %10zu %12.4f %12.4f %8.2f\n", "edge_flux(p=3)", n,
                t_flux, t_flux_s, t_flux_s / t_flux);
  }
  return 0;
}
