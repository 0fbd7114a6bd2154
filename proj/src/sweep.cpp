#include "viscowave/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "viscowave/csv.hpp"

namespace viscowave {
namespace sweep {

namespace {

void validate_plan(const SweepPlan& plan) {
  if (plan.eps_list.empty())
    throw std::invalid_argument("sweep: eps list must not be empty");
  for (double e : plan.eps_list)
    if (!(e > 0.0) || e > 1.0)
      throw std::invalid_argument("sweep: eps values must lie in (0, 1]");
  for (std::size_t i = 1; i < plan.eps_list.size(); ++i)
    if (plan.eps_list[i] > plan.eps_list[i - 1])
      throw std::invalid_argument("sweep: eps list must be descending");
  if (plan.r_list.empty())
    throw std::invalid_argument("sweep: r list must not be empty");
  for (double r : plan.r_list)
    if (r < plan.scenario.p)
      throw std::invalid_argument("sweep: every r must be >= p");
}

double trajectory_distance(const TrajectoryRecord& a,
                           const TrajectoryRecord& b) {
  if (a.states.size() != b.states.size())
    return std::numeric_limits<double>::quiet_NaN();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.states.size(); ++k)
    worst = std::max(worst, h_norm(a.states[k].u - b.states[k].u));
  return worst;
}

} // namespace

SweepReport run_sweep(const SweepPlan& plan) {
  validate_plan(plan);
  const SpatialGrid grid = plan.scenario.make_grid();
  const GridFunction u0 = plan.scenario.u0.realize(grid);
  const GridFunction u1 = plan.scenario.u1.realize(grid);

  SweepReport report;
  for (double r : plan.r_list)
    for (double eps : plan.eps_list) {
      RunSummary run;
      run.eps = eps;
      run.r = r;
      report.runs.push_back(std::move(run));
    }

  const int n_runs = static_cast<int>(report.runs.size());
#ifdef _OPENMP
  const int threads =
      plan.workers > 0 ? plan.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) \
    if (threads > 1 && n_runs > 1)
#endif
  for (int i = 0; i < n_runs; ++i) {
    RunSummary& run = report.runs[static_cast<std::size_t>(i)];
    SolverConfig cfg = plan.base_config;
    cfg.rspec.epsilon = run.eps;
    cfg.rspec.r = run.r;
    try {
      TrajectoryRecord traj =
          solve_trajectory(u0, u1, cfg, plan.scenario.vspec, plan.scenario.env);
      diagnostics::EnergyLedger ledger =
          diagnostics::build_ledger(traj, plan.scenario.vspec,
                                    plan.scenario.env);
      run.steps = static_cast<int>(traj.states.size()) - 1;
      run.m1 = ledger.m1_proxy;
      run.m2 = ledger.m2_proxy;
      run.eps_lr = ledger.eps_lr_norm;
      run.reg_total = ledger.rows.back().reg_cum;
      run.work_total = ledger.rows.back().work_cum;
      run.m0 = ledger.apriori.m0;
      run.m3_realized =
          traj.states.size() >= 3
              ? diagnostics::second_derivative_norm_proxy(
                    traj, plan.dual_norm_samples, plan.seed)
              : 0.0;
      run.traj = std::move(traj);
      run.ledger = std::move(ledger);
    } catch (const std::exception& e) {
      run.failed = true;
      run.error = e.what();
    }
  }

  // Pairwise C(T,H) distances and per-run distance to the finest-eps run of
  // the same r.
  const std::size_t m = report.runs.size();
  report.dist.assign(m * m, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < m; ++i) {
    report.dist[i * m + i] = report.runs[i].failed
                                 ? std::numeric_limits<double>::quiet_NaN()
                                 : 0.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (report.runs[i].failed || report.runs[j].failed) continue;
      const double d =
          trajectory_distance(*report.runs[i].traj, *report.runs[j].traj);
      report.dist[i * m + j] = d;
      report.dist[j * m + i] = d;
    }
  }
  const std::size_t eps_count = plan.eps_list.size();
  for (std::size_t ri = 0; ri < plan.r_list.size(); ++ri) {
    const std::size_t finest = ri * eps_count + (eps_count - 1);
    for (std::size_t ei = 0; ei < eps_count; ++ei) {
      const std::size_t idx = ri * eps_count + ei;
      report.runs[idx].dist_to_finest = report.dist[idx * m + finest];
    }
  }

  // Shared ceiling: the a priori bound is computed from data only, so every
  // successful run carries the same value.
  report.uniform_bound_ok = true;
  for (const RunSummary& run : report.runs) {
    if (run.failed) {
      report.uniform_bound_ok = false;
      continue;
    }
    report.m0 = run.m0;
  }
  for (const RunSummary& run : report.runs) {
    if (run.failed) continue;
    if (run.m1 > report.m0 || run.m2 > report.m0 || run.eps_lr > report.m0)
      report.uniform_bound_ok = false;
  }
  return report;
}

RichardsonEstimate richardson_limit_estimate(const SweepReport& report) {
  // Runs at the leading r, eps descending, successful only.
  std::vector<const RunSummary*> runs;
  if (report.runs.empty())
    throw std::invalid_argument("richardson: empty report");
  const double r0 = report.runs.front().r;
  for (const RunSummary& run : report.runs)
    if (run.r == r0 && !run.failed) runs.push_back(&run);
  if (runs.size() < 2)
    throw std::invalid_argument(
        "richardson: need at least two successful eps runs");

  const auto terminal_u = [](const RunSummary& r) {
    return r.traj->states.back().u;
  };
  const auto terminal_v = [](const RunSummary& r) {
    return r.traj->states.back().v;
  };

  const RunSummary& coarse = *runs[runs.size() - 2];
  const RunSummary& fine = *runs[runs.size() - 1];
  RichardsonEstimate est{terminal_u(fine), terminal_v(fine)};
  est.pair_distance = h_norm(terminal_u(fine) - terminal_u(coarse));

  const double de = coarse.eps - fine.eps;
  if (de > 0.0) {
    const double scale = fine.eps / de;
    est.u_limit =
        terminal_u(fine) + scale * (terminal_u(fine) - terminal_u(coarse));
    est.v_limit =
        terminal_v(fine) + scale * (terminal_v(fine) - terminal_v(coarse));
  }

  if (runs.size() >= 3) {
    const RunSummary& a = *runs[runs.size() - 3];
    const RunSummary& b = coarse;
    const double dab = a.eps - b.eps;
    if (dab > 0.0) {
      const double t = (b.eps - fine.eps) / dab;
      const GridFunction predicted =
          terminal_u(b) + t * (terminal_u(b) - terminal_u(a));
      est.extrapolation_residual = h_norm(predicted - terminal_u(fine));
      est.has_residual = true;
    }
  }
  return est;
}

void write_sweep_csv(const SweepReport& report, std::ostream& os) {
  os << "eps,r,steps,failed,m1,m2,eps_lr,reg_total,m3_realized,m0,"
        "dist_to_finest\n";
  for (const RunSummary& run : report.runs) {
    os << format_g17(run.eps) << ',' << format_g17(run.r) << ',' << run.steps
       << ',' << (run.failed ? 1 : 0) << ',' << format_g17(run.m1) << ','
       << format_g17(run.m2) << ',' << format_g17(run.eps_lr) << ','
       << format_g17(run.reg_total) << ',' << format_g17(run.m3_realized)
       << ',' << format_g17(run.m0) << ',' << format_g17(run.dist_to_finest)
       << '\n';
  }
}

std::string summary_text(const SweepReport& report) {
  std::ostringstream os;
  os << "runs: " << report.runs.size() << "\n";
  os << "shared a priori bound M0: " << format_g17(report.m0) << "\n";
  os << "uniform bound check: " << (report.uniform_bound_ok ? "pass" : "FAIL")
     << "\n";
  for (const RunSummary& run : report.runs) {
    os << "  eps=" << run.eps << " r=" << run.r;
    if (run.failed) {
      os << "  FAILED: " << run.error << "\n";
      continue;
    }
    os << "  sup|v|=" << run.m1 << "  sup||u||=" << run.m2
       << "  eps^{1/r}||v||_Lr=" << run.eps_lr
       << "  reg_total=" << run.reg_total
       << "  dist_to_finest=" << run.dist_to_finest << "\n";
  }
  return os.str();
}

} // namespace sweep
} // namespace viscowave
