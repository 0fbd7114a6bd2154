#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "viscowave/diagnostics.hpp"
#include "viscowave/scenarios.hpp"
#include "viscowave/stepper.hpp"

/// eps / r continuation driver: run a family of regularized problems over a
/// descending eps list (and a list of regularizer orders), check that the
/// a priori ceiling is shared, and measure Cauchy behaviour in the discrete
/// C(T, H) norm as eps -> 0.
///
/// Runs are independent and execute in parallel (OpenMP); results are keyed
/// by (eps, r) position, never by completion order, so reports are
/// deterministic regardless of scheduling.
namespace viscowave {
namespace sweep {

struct SweepPlan {
  std::vector<double> eps_list; // descending, in (0, 1]; repeats allowed
  std::vector<double> r_list;   // each >= scenario.p
  SolverConfig base_config;
  Scenario scenario;
  int workers = 0; // 0 = OpenMP default
  int dual_norm_samples = 16;
  std::uint64_t seed = 1;
};

struct RunSummary {
  double eps = 0.0;
  double r = 0.0;
  bool failed = false;
  std::string error;
  int steps = 0;
  double m1 = 0.0;          // sup_t |v|
  double m2 = 0.0;          // sup_t ||u||
  double eps_lr = 0.0;      // eps^{1/r} ||v||_{L^r(T,X)}
  double reg_total = 0.0;   // eps sum tau ||v||^r (cumulative regularizer work)
  double work_total = 0.0;
  double m3_realized = 0.0; // sampled u'' proxy norm
  double m0 = 0.0;          // shared data ceiling
  double dist_to_finest = 0.0; // C(T,H) distance to the finest-eps run, same r
  std::optional<TrajectoryRecord> traj;
  std::optional<diagnostics::EnergyLedger> ledger;
};

struct SweepReport {
  std::vector<RunSummary> runs; // r-major, eps descending within each r
  std::vector<double> dist;     // pairwise max-over-steps h_norm(u_i - u_j)
  double m0 = 0.0;
  bool uniform_bound_ok = false;

  std::size_t n_runs() const { return runs.size(); }
  double distance(std::size_t i, std::size_t j) const {
    return dist[i * runs.size() + j];
  }
};

SweepReport run_sweep(const SweepPlan& plan);

struct RichardsonEstimate {
  GridFunction u_limit; // terminal-state linear-in-eps extrapolation to 0
  GridFunction v_limit;
  double pair_distance = 0.0;          // terminal distance of the finest pair
  bool has_residual = false;           // needs >= 3 distinct runs
  double extrapolation_residual = 0.0; // prediction error at the finest eps
};

/// Convergence-rate diagnostic from the finest runs at the leading r.
/// Requires at least two eps runs.
RichardsonEstimate richardson_limit_estimate(const SweepReport& report);

/// CSV columns: eps,r,steps,failed,m1,m2,eps_lr,reg_total,m3_realized,m0,
/// dist_to_finest.
void write_sweep_csv(const SweepReport& report, std::ostream& os);

/// Human-readable run table plus the uniformity and convergence diagnostics.
std::string summary_text(const SweepReport& report);

} // namespace sweep
} // namespace viscowave
