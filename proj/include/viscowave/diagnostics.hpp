#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "viscowave/stepper.hpp"

/// Energy bookkeeping for computed trajectories and the data-dependent
/// a priori ceiling that every regularized run must stay under.
///
/// All time integrals use right-endpoint quadrature (values at the new time
/// of each implicit step); with backward Euler the per-step energy inequality
///
///   1/2|v+|^2 - 1/2|v|^2 + tau <A_eps(t+, v+), v+>
///     + 1/2<Bu+, u+> - 1/2<Bu, u> <= tau (g, v+)
///
/// then holds exactly up to roundoff and the inner solve tolerance, and the
/// cumulative ledger inequalities telescope from it.
namespace viscowave {
namespace diagnostics {

struct LedgerRow {
  double t = 0.0;
  double tau = 0.0;     // length of the step ending at t (0 for the first row)
  double kinetic = 0.0; // 1/2 |v|^2
  double elastic = 0.0; // 1/2 <Bu, u>
  double visc_cum = 0.0; // sum tau <A(t_k, v_k), v_k>
  double reg_cum = 0.0;  // eps sum tau ||v_k||^r
  double work_cum = 0.0; // sum tau (g_k, v_k)
  double slack = 0.0;    // per-step energy inequality slack (>= 0 up to tol)
};

/// Gronwall-type bound assembled from the trajectory data alone; independent
/// of eps and r by construction.
struct AprioriBound {
  double m0 = 0.0;       // max(m1, m2, m3_proxy)
  double m = 0.0;        // Gronwall bound on |v|^2
  double m1 = 0.0;       // bound on sup_t |v|
  double m2 = 0.0;       // bound on sup_t ||u||
  double m3_proxy = 0.0; // data-side bound for the u'' proxy norm
  double e_bound = 0.0;  // bound on the energy inequality right-hand side
  double c0 = 0.0;       // discrete coercivity constant of B used for m2
  double c3 = 0.0;       // additive constant fed to the Gronwall lemma
  bool tau_small_enough = false; // tau max-weight < 1/2 so the lemma applies
  bool jensen_ok = false;        // |u_k|^2 <= 2|u0|^2 + 2b sum tau |v_j|^2
  bool dominated = false;        // realized sup-norms stayed <= m0
  double worst_margin = 0.0;     // min over monitored norms of m0 - realized
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;
  double m1_proxy = 0.0;     // sup_t |v|
  double m2_proxy = 0.0;     // sup_t ||u||
  double eps_lr_norm = 0.0;  // eps^{1/r} ||v||_{L^r(T,X)} = (reg_cum)^{1/r}
  AprioriBound apriori;
};

EnergyLedger build_ledger(const TrajectoryRecord& traj,
                          const ViscositySpec& vspec,
                          const ForcingEnvelope& env);

struct IneqReport {
  bool pass = false;
  double worst_slack = 0.0;
  int worst_index = -1;
};

/// Cumulative a priori inequality at every step n:
///   kinetic_n + reg_cum_n + elastic_n <= work_cum_n + 1/2|u1|^2 + 1/2<Bu0,u0>
/// (the sharp elastic form on both sides; viscous dissipation discarded).
IneqReport check_apriori_inequality(const EnergyLedger& ledger,
                                    const GridFunction& u0,
                                    const GridFunction& u1, double tol);

/// Discrete Gronwall bound: if x_n <= c + sum_{k<n} w_k x_k with w_k >= 0,
/// then sup_n x_n <= c prod_k (1 + w_k). Evaluated through the defining
/// recursion (which attains the product bound with equality), so it matches a
/// brute-force recursion oracle bit for bit.
double gronwall_bound(double c, std::span<const double> weights);

/// Assemble the a priori bound for the trajectory's data and verify that the
/// realized sup-norms stay under it. The ingredients are u0, u1, B, the
/// assembled growth coefficient, gamma, the horizon and tau; eps and r never
/// enter, which is the point.
AprioriBound apriori_m0(const TrajectoryRecord& traj,
                        const ViscositySpec& vspec, const ForcingEnvelope& env,
                        const GridFunction& u0, const GridFunction& u1);

/// L^{r'}(T, X*)-type norm of the difference quotients (v_k - v_{k-1})/tau_k,
/// with the dual norm estimated by the sampled monitor. Reported across
/// sweeps; not part of the dynamics.
double second_derivative_norm_proxy(const TrajectoryRecord& traj, int samples,
                                    std::uint64_t seed);

/// CSV columns: step,t,kinetic,elastic,visc_diss,reg_diss,work,ineq_slack.
void write_ledger_csv(const EnergyLedger& ledger, std::ostream& os);

} // namespace diagnostics
} // namespace viscowave
