#include "viscowave/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "viscowave/config.hpp"
#include "viscowave/csv.hpp"
#include "viscowave/diagnostics.hpp"
#include "viscowave/kernels.hpp"
#include "viscowave/sweep.hpp"

namespace viscowave {
namespace cli {

namespace {

namespace fs = std::filesystem;

void write_trajectory_csv(const TrajectoryRecord& traj, std::ostream& os) {
  const int n = traj.grid.n();
  os << "step,t";
  for (int i = 1; i <= n; ++i) os << ",u" << i;
  for (int i = 1; i <= n; ++i) os << ",v" << i;
  os << '\n';
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const State& s = traj.states[k];
    os << k << ',' << format_g17(s.t);
    for (double v : s.u.values()) os << ',' << format_g17(v);
    for (double v : s.v.values()) os << ',' << format_g17(v);
    os << '\n';
  }
}

void write_manifest(const Config& cfg, const std::vector<std::string>& outputs,
                    std::ostream& os) {
  const std::string serialized = cfg.serialize();
  os << "version=" << version_token << '\n';
  os << "input_digest=" << fnv1a_hex(serialized) << '\n';
  std::string joined;
  for (const std::string& o : outputs) joined += (joined.empty() ? "" : ",") + o;
  os << "outputs=" << joined << '\n';
  os << serialized;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

std::string run_dir_name(double eps, double r) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "run_eps%g_r%g", eps, r);
  return buf;
}

int config_error(const std::exception& e) {
  std::cerr << "configuration error: " << e.what() << '\n';
  return exit_config_error;
}

} // namespace

int cmd_solve(const std::string& config_path,
              const std::vector<std::string>& overrides,
              const std::string& out_dir) {
  Config cfg;
  Scenario scenario{};
  SolverConfig solver;
  try {
    cfg = resolve_config(config_path, overrides);
    scenario = cfg.make_scenario();
    solver = cfg.make_solver_config();
  } catch (const std::exception& e) {
    return config_error(e);
  }

  try {
    const SpatialGrid grid = scenario.make_grid();
    const TrajectoryRecord traj =
        solve_trajectory(scenario.u0.realize(grid), scenario.u1.realize(grid),
                         solver, scenario.vspec, scenario.env);
    const diagnostics::EnergyLedger ledger =
        diagnostics::build_ledger(traj, scenario.vspec, scenario.env);

    fs::create_directories(out_dir);
    {
      std::ostringstream os;
      write_trajectory_csv(traj, os);
      write_file(fs::path(out_dir) / "trajectory.csv", os.str());
    }
    {
      std::ostringstream os;
      diagnostics::write_ledger_csv(ledger, os);
      write_file(fs::path(out_dir) / "energy.csv", os.str());
    }
    {
      std::ostringstream os;
      write_manifest(cfg, {"trajectory.csv", "energy.csv"}, os);
      write_file(fs::path(out_dir) / "manifest.txt", os.str());
    }
    std::cout << "solve: preset=" << cfg.preset << " steps="
              << traj.states.size() - 1 << " sup|v|=" << ledger.m1_proxy
              << " sup||u||=" << ledger.m2_proxy << " M0="
              << ledger.apriori.m0 << '\n';
    return exit_ok;
  } catch (const StepFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return exit_solver_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_solver_failure;
  }
}

int cmd_sweep(const std::string& config_path,
              const std::vector<std::string>& overrides,
              const std::vector<double>& eps_list,
              const std::vector<double>& r_list, const std::string& out_dir) {
  Config cfg;
  sweep::SweepPlan plan;
  try {
    cfg = resolve_config(config_path, overrides);
    if (eps_list.empty())
      throw ConfigError("sweep: at least one eps value is required");
    plan.eps_list = eps_list;
    plan.r_list = r_list.empty() ? std::vector<double>{cfg.r} : r_list;
    plan.base_config = cfg.make_solver_config();
    plan.scenario = cfg.make_scenario();
    plan.workers = cfg.workers;
    plan.seed = cfg.seed;
  } catch (const std::exception& e) {
    return config_error(e);
  }

  try {
    const sweep::SweepReport report = sweep::run_sweep(plan);

    fs::create_directories(out_dir);
    {
      std::ostringstream os;
      sweep::write_sweep_csv(report, os);
      write_file(fs::path(out_dir) / "sweep.csv", os.str());
    }
    write_file(fs::path(out_dir) / "summary.txt", sweep::summary_text(report));
    for (const sweep::RunSummary& run : report.runs) {
      if (run.failed) continue;
      const fs::path dir = fs::path(out_dir) / run_dir_name(run.eps, run.r);
      fs::create_directories(dir);
      std::ostringstream traj_os, ledger_os;
      write_trajectory_csv(*run.traj, traj_os);
      diagnostics::write_ledger_csv(*run.ledger, ledger_os);
      write_file(dir / "trajectory.csv", traj_os.str());
      write_file(dir / "energy.csv", ledger_os.str());
    }

    std::cout << sweep::summary_text(report);
    bool any_ok = false;
    for (const sweep::RunSummary& run : report.runs)
      if (!run.failed) any_ok = true;
    return any_ok ? exit_ok : exit_solver_failure;
  } catch (const std::exception& e) {
    std::cerr << "sweep error: " << e.what() << '\n';
    return exit_solver_failure;
  }
}

namespace {

struct CheckRow {
  std::string name;
  bool pass;
  std::string detail;
};

class CheckTable {
 public:
  void add(const std::string& name, bool pass, const std::string& detail) {
    rows_.push_back({name, pass, detail});
  }
  bool all_pass() const {
    for (const CheckRow& r : rows_)
      if (!r.pass) return false;
    return true;
  }
  void print(std::ostream& os) const {
    for (const CheckRow& r : rows_) {
      os << (r.pass ? "PASS  " : "FAIL  ") << r.name;
      if (!r.detail.empty()) os << "  (" << r.detail << ")";
      os << '\n';
    }
  }

 private:
  std::vector<CheckRow> rows_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

} // namespace

int cmd_verify(const std::string& preset_name,
               const std::vector<std::string>& overrides) {
  Config cfg;
  Scenario scenario{};
  SolverConfig solver;
  try {
    std::vector<std::string> all = {"preset=" + preset_name};
    all.insert(all.end(), overrides.begin(), overrides.end());
    cfg = resolve_config("", all);
    scenario = cfg.make_scenario();
    solver = cfg.make_solver_config();
  } catch (const std::exception& e) {
    return config_error(e);
  }

  CheckTable table;
  const SpatialGrid grid = scenario.make_grid();
  const double p = grid.p();
  const RegularizerSpec rspec = solver.rspec;
  std::uint64_t seed = cfg.seed;

  // operator identities and monitors on random directions
  {
    double worst_sbp = 0.0, worst_euler = 0.0, worst_dual = 0.0,
           worst_kr = 0.0, worst_holder = 0.0, worst_mono = 0.0,
           worst_nonneg = 0.0, worst_growth = 0.0, worst_embed = 0.0;
    for (int s = 0; s < 40; ++s) {
      const GridFunction y = random_grid_function(grid, Space::primal, seed + s);
      const GridFunction w =
          random_grid_function(grid, Space::primal, seed + 1000 + s);

      double sbp = 0.0; // h sum_e (Dy)_e (Dw)_e, written out longhand
      for (int e = 0; e <= grid.n(); ++e) {
        const double yl = e == 0 ? 0.0 : y[static_cast<std::size_t>(e - 1)];
        const double yr = e == grid.n() ? 0.0 : y[static_cast<std::size_t>(e)];
        const double wl = e == 0 ? 0.0 : w[static_cast<std::size_t>(e - 1)];
        const double wr = e == grid.n() ? 0.0 : w[static_cast<std::size_t>(e)];
        sbp += grid.h() * ((yr - yl) / grid.h()) * ((wr - wl) / grid.h());
      }
      const double pair_bw = dual_pair(apply_B(y), w);
      worst_sbp = std::max(worst_sbp, std::abs(sbp - pair_bw) /
                                          std::max(1.0, std::abs(sbp)));

      const double xn = x_norm(y);
      worst_euler =
          std::max(worst_euler, std::abs(dual_pair(apply_Jp(y, p), y) -
                                         std::pow(xn, p)) /
                                    std::pow(xn, p));
      worst_dual = std::max(
          worst_dual,
          std::abs(dual_pair(duality_map(y, p), y) - xn * xn) / (xn * xn));
      worst_kr = std::max(
          worst_kr, std::abs(dual_pair(apply_Kr(y, rspec, p), y) -
                             std::pow(xn, rspec.r)) /
                        std::pow(xn, rspec.r));
      worst_holder = std::max(
          worst_holder, dual_pair(apply_Jp(y, p), w) /
                            (std::pow(xn, p - 1.0) * x_norm(w)) -
                        1.0);
      worst_embed = std::max(worst_embed, h_norm(y) / xn);

      const double t = 0.37;
      const GridFunction av = apply_A(t, y, scenario.vspec);
      const GridFunction aw = apply_A(t, w, scenario.vspec);
      const GridFunction diff = y - w;
      worst_mono =
          std::min(worst_mono, dual_pair(av - aw, diff)); // should stay >= ~0
      worst_nonneg = std::min(worst_nonneg, dual_pair(av, y));

      double a_sup = 0.0, b_sup = 0.0;
      for (int e = 0; e <= grid.n(); ++e)
        a_sup = std::max(a_sup, scenario.vspec.coeff_a(t, grid.edge_midpoint(e)));
      for (int i = 0; i < grid.n(); ++i)
        b_sup = std::max(b_sup, scenario.vspec.beta(grid.node(i)));
      const double growth_rhs = a_sup * std::pow(xn, p - 1.0) +
                                poincare_embedding_bound(grid) * b_sup *
                                    h_norm(y);
      const double growth_lhs = dual_norm_upper(av, 8, seed + 2000 + s);
      worst_growth =
          std::max(worst_growth, growth_lhs - growth_rhs * (1.0 + 1e-10));
    }
    table.add("summation_by_parts", worst_sbp <= 1e-12,
              "worst rel " + fmt(worst_sbp));
    table.add("euler_identity_Jp", worst_euler <= 1e-10,
              "worst rel " + fmt(worst_euler));
    table.add("duality_map_identity", worst_dual <= 1e-10,
              "worst rel " + fmt(worst_dual));
    table.add("regularizer_identity_Kr", worst_kr <= 1e-10,
              "worst rel " + fmt(worst_kr));
    table.add("holder_monitor", worst_holder <= 1e-10,
              "worst excess " + fmt(worst_holder));
    table.add("embedding_bound",
              worst_embed <= poincare_embedding_bound(grid),
              "sampled " + fmt(worst_embed) + " <= " +
                  fmt(poincare_embedding_bound(grid)));
    table.add("viscosity_monotone", worst_mono >= -1e-12,
              "worst pairing " + fmt(worst_mono));
    table.add("viscosity_nonnegative", worst_nonneg >= -1e-12,
              "worst pairing " + fmt(worst_nonneg));
    table.add("viscosity_growth_monitor", worst_growth <= 1e-9,
              "worst excess " + fmt(worst_growth));
  }

  // Gronwall bound against an independently written recursion
  {
    std::mt19937_64 rng(seed + 99);
    std::uniform_real_distribution<double> wdist(0.0, 2.0);
    std::uniform_int_distribution<int> ldist(0, 12);
    bool exact = true;
    for (int trial = 0; trial < 200 && exact; ++trial) {
      const double c = wdist(rng);
      std::vector<double> weights(static_cast<std::size_t>(ldist(rng)));
      for (double& w : weights) w = wdist(rng);
      std::vector<double> x{c};
      double sup = c;
      for (std::size_t n = 1; n <= weights.size(); ++n) {
        double s = c;
        for (std::size_t k = 0; k < n; ++k) s += weights[k] * x[k];
        x.push_back(s);
        sup = std::max(sup, s);
      }
      exact = diagnostics::gronwall_bound(c, weights) == sup;
    }
    table.add("gronwall_oracle_exact", exact, "200 random instances");
  }

  // parallel kernels against the serial reference
  {
    const std::size_t big = 100000;
    std::mt19937_64 rng(seed + 7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> a(big), bvec(big), out1(big), out2(big);
    for (std::size_t i = 0; i < big; ++i) {
      a[i] = dist(rng);
      bvec[i] = dist(rng);
    }
    const double d1 = kernels::dot(a, bvec);
    const double d2 = kernels::serial::dot(a, bvec);
    const double g1 = kernels::grad_pow_sum(a, 8.0, p);
    const double g2 = kernels::serial::grad_pow_sum(a, 8.0, p);
    kernels::neg_laplacian(a, 4.0, out1);
    kernels::serial::neg_laplacian(a, 4.0, out2);
    const bool lap_equal = std::memcmp(out1.data(), out2.data(),
                                       big * sizeof(double)) == 0;
    const double rel_d = std::abs(d1 - d2) / std::max(1.0, std::abs(d2));
    const double rel_g = std::abs(g1 - g2) / std::max(1.0, std::abs(g2));
    table.add("kernels_parallel_vs_serial",
              rel_d <= 1e-12 && rel_g <= 1e-12 && lap_equal,
              "dot rel " + fmt(rel_d) + ", grad rel " + fmt(rel_g));
  }

  // trajectory-level checks
  try {
    const GridFunction u0 = scenario.u0.realize(grid);
    const GridFunction u1 = scenario.u1.realize(grid);
    const TrajectoryRecord traj =
        solve_trajectory(u0, u1, solver, scenario.vspec, scenario.env);
    const diagnostics::EnergyLedger ledger =
        diagnostics::build_ledger(traj, scenario.vspec, scenario.env);
    const double init_scale = ledger.rows.front().kinetic +
                              ledger.rows.front().elastic + 1.0;

    double min_slack = 0.0, min_diss = 0.0;
    for (std::size_t k = 1; k < ledger.rows.size(); ++k) {
      min_slack = std::min(min_slack, ledger.rows[k].slack);
      const double diss =
          ledger.rows[k].visc_cum - ledger.rows[k - 1].visc_cum +
          ledger.rows[k].reg_cum - ledger.rows[k - 1].reg_cum;
      min_diss = std::min(min_diss, diss);
    }
    table.add("step_energy_inequality", min_slack >= -1e-10 * init_scale,
              "min slack " + fmt(min_slack));
    table.add("dissipation_positivity", min_diss >= -1e-12 * init_scale,
              "min step dissipation " + fmt(min_diss));

    const diagnostics::IneqReport ineq = diagnostics::check_apriori_inequality(
        ledger, u0, u1, 1e-10 * init_scale);
    table.add("apriori_inequality", ineq.pass,
              "worst slack " + fmt(ineq.worst_slack));
    table.add("apriori_domination",
              ledger.apriori.dominated && ledger.apriori.jensen_ok &&
                  ledger.apriori.tau_small_enough,
              "M0 " + fmt(ledger.apriori.m0) + ", margin " +
                  fmt(ledger.apriori.worst_margin));

    // selection containment, exact
    bool contained = true;
    for (std::size_t k = 1; k < traj.states.size() && contained; ++k) {
      const State& prev = traj.states[k - 1];
      const State& cur = traj.states[k];
      const double t_sel = solver.scheme == Scheme::backward_euler
                               ? cur.t
                               : prev.t + 0.5 * (cur.t - prev.t);
      for (int i = 0; i < grid.n(); ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        const double z = grid.node(i);
        const double drift = scenario.env.gamma * prev.v[u];
        const double lo = scenario.env.f_lower(t_sel, z, prev.u[u]) + drift;
        const double hi = scenario.env.f_upper(t_sel, z, prev.u[u]) + drift;
        const double g = (*cur.f_sel)[u];
        if (!(lo <= g && g <= hi)) {
          contained = false;
          break;
        }
      }
    }
    table.add("selection_containment", contained, "exact, full trajectory");

    // determinism
    const TrajectoryRecord twin =
        solve_trajectory(u0, u1, solver, scenario.vspec, scenario.env);
    bool identical = twin.states.size() == traj.states.size();
    for (std::size_t k = 0; identical && k < traj.states.size(); ++k)
      identical =
          std::memcmp(traj.states[k].u.values().data(),
                      twin.states[k].u.values().data(),
                      traj.states[k].u.size() * sizeof(double)) == 0 &&
          std::memcmp(traj.states[k].v.values().data(),
                      twin.states[k].v.values().data(),
                      traj.states[k].v.size() * sizeof(double)) == 0;
    table.add("determinism_bitwise", identical, "two identical solves");
  } catch (const StepFailure& e) {
    table.add("trajectory_checks", false, e.what());
  }

  table.print(std::cout);
  return table.all_pass() ? exit_ok : exit_verification_failure;
}

} // namespace cli
} // namespace viscowave
