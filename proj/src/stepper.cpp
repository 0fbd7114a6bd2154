#include "viscowave/stepper.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "viscowave/kernels.hpp"

namespace viscowave {

Scheme scheme_from_string(const std::string& name) {
  if (name == "backward_euler") return Scheme::backward_euler;
  if (name == "midpoint") return Scheme::midpoint;
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (valid: backward_euler, midpoint)");
}

std::string to_string(Scheme s) {
  return s == Scheme::backward_euler ? "backward_euler" : "midpoint";
}

namespace {

std::string failure_message(int step_index, double t, double residual) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "inner solve failed at step %d (t = %.6g): residual %.3e "
                "above tolerance after Newton iteration limit",
                step_index, t, residual);
  return buf;
}

} // namespace

StepFailure::StepFailure(int step_index_, double t_, double residual_)
    : std::runtime_error(failure_message(step_index_, t_, residual_)),
      step_index(step_index_),
      t(t_),
      residual(residual_) {}

int step_count(double horizon_b, double tau) {
  if (!(tau > 0.0) || !(horizon_b > 0.0))
    throw std::invalid_argument("step_count: tau and horizon must be > 0");
  if (tau > horizon_b * (1.0 + 1e-12))
    throw std::invalid_argument("step_count: tau must not exceed the horizon");
  const double ratio = horizon_b / tau;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) < 1e-9 * rounded)
    return static_cast<int>(rounded);
  return static_cast<int>(std::ceil(ratio));
}

namespace {

// Frozen data and scratch space for one inner solve. The inner operator is
// evaluated at m = w (backward Euler) or m = (v + w)/2 (midpoint); both
// schemes share the same assembly with scheme-dependent shift factors.
class InnerProblem {
 public:
  InnerProblem(const State& s, double tau, const SolverConfig& cfg,
               const ViscositySpec& vspec, const GridFunction& g)
      : grid_(s.u.grid()),
        vspec_(vspec),
        rspec_(cfg.rspec),
        scheme_(cfg.scheme),
        tau_(tau),
        n_(static_cast<std::size_t>(grid_.n())),
        inv_h_(1.0 / grid_.h()),
        u_(s.u.values()),
        v_(s.v.values()),
        g_(g.values()),
        m_shift_(cfg.scheme == Scheme::backward_euler ? 1.0 : 0.5),
        u_shift_(cfg.scheme == Scheme::backward_euler ? tau : 0.5 * tau),
        b_shift_(cfg.stiffness_scale *
                 (cfg.scheme == Scheme::backward_euler ? tau : 0.25 * tau)),
        stiffness_(cfg.stiffness_scale) {
    t_eval_ = cfg.scheme == Scheme::backward_euler ? s.t + tau : s.t + 0.5 * tau;
    edge_a_.resize(n_ + 1);
    for (std::size_t e = 0; e <= n_; ++e)
      edge_a_[e] = vspec_.coeff_a(t_eval_, grid_.edge_midpoint(static_cast<int>(e)));
    beta_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      beta_[i] = vspec_.beta(grid_.node(static_cast<int>(i)));
    m_.resize(n_);
    ubuf_.resize(n_);
    flux_.resize(n_ + 1);
    psi_edges_.resize(n_ + 1);
    jp_.resize(n_);
    lap_.resize(n_);
    diag_.resize(n_);
    off_.resize(n_ > 0 ? n_ - 1 : 0);
    t1_.resize(n_);
    t2_.resize(n_);
    scratch_.resize(n_);
  }

  // G(w); returns the H-norm of the residual and fills `out`.
  double eval(std::span<const double> w, std::span<double> out) {
    update_midpoint(w);

    // viscosity A(t, m)
    kernels::edge_flux(m_, inv_h_, vspec_.p, edge_a_, flux_);
    kernels::flux_divergence(flux_, inv_h_, beta_, m_, out);

    // eps K_r(m) = eps ||m||^{r-p} J_p(m)
    m_xnorm_ = std::pow(grid_.h() * kernels::grad_pow_sum(m_, inv_h_, vspec_.p),
                        1.0 / vspec_.p);
    rho_ = 0.0;
    if (rspec_.epsilon > 0.0 && m_xnorm_ > 0.0) {
      rho_ = std::pow(m_xnorm_, rspec_.r - vspec_.p);
      kernels::edge_flux(m_, inv_h_, vspec_.p, {}, flux_);
      kernels::flux_divergence(flux_, inv_h_, {}, m_, jp_);
      kernels::axpy(rspec_.epsilon * rho_, jp_, out);
    }

    // B(u + u_shift m)
    kernels::axpby(1.0, u_, u_shift_, m_, ubuf_);
    kernels::neg_laplacian(ubuf_, inv_h_ * inv_h_, lap_);

    const double inv_tau = 1.0 / tau_;
    for (std::size_t i = 0; i < n_; ++i)
      out[i] += (w[i] - v_[i]) * inv_tau + stiffness_ * lap_[i] - g_[i];
    return std::sqrt(grid_.h() * kernels::dot(out, out));
  }

  // Solve (dG/dw at the state of the last eval) delta = rhs.
  void solve_newton_system(std::span<const double> rhs,
                           std::span<double> delta) {
    kernels::psi_prime_edges(m_, inv_h_, vspec_.p, {}, psi_edges_);
    const double coeff_k = rspec_.epsilon > 0.0 ? rspec_.epsilon * rho_ : 0.0;
    const double inv_h2 = inv_h_ * inv_h_;
    for (std::size_t i = 0; i < n_; ++i) {
      const double w_left = (edge_a_[i] + coeff_k) * psi_edges_[i];
      const double w_right = (edge_a_[i + 1] + coeff_k) * psi_edges_[i + 1];
      diag_[i] = 1.0 / tau_ + m_shift_ * ((w_left + w_right) * inv_h2 + beta_[i]) +
                 b_shift_ * 2.0 * inv_h2;
      if (i + 1 < n_)
        off_[i] = -(m_shift_ * (edge_a_[i + 1] + coeff_k) * psi_edges_[i + 1] +
                    b_shift_) *
                  inv_h2;
    }

    // rank-one part from the scalar factor ||m||^{r-p} of K_r
    double sigma = 0.0;
    if (rspec_.epsilon > 0.0 && rspec_.r != vspec_.p && m_xnorm_ > 0.0) {
      sigma = rspec_.epsilon * (rspec_.r - vspec_.p) * grid_.h() *
              std::pow(m_xnorm_, rspec_.r - 2.0 * vspec_.p) * m_shift_;
    }

    thomas(rhs, t1_);
    if (sigma == 0.0) {
      for (std::size_t i = 0; i < n_; ++i) delta[i] = t1_[i];
      return;
    }
    thomas(jp_, t2_);
    const double lambda = sigma * kernels::dot(jp_, t1_) /
                          (1.0 + sigma * kernels::dot(jp_, t2_));
    kernels::axpby(1.0, t1_, -lambda, t2_, delta);
  }

 private:
  void update_midpoint(std::span<const double> w) {
    if (scheme_ == Scheme::backward_euler) {
      for (std::size_t i = 0; i < n_; ++i) m_[i] = w[i];
    } else {
      kernels::axpby(0.5, v_, 0.5, w, m_);
    }
  }

  // Symmetric tridiagonal solve (diag_, off_); strictly diagonally dominant,
  // so no pivoting is needed.
  void thomas(std::span<const double> rhs, std::vector<double>& x) {
    std::vector<double>& cp = scratch_; // per-row superdiagonal multipliers
    double pivot = diag_[0];
    cp[0] = n_ > 1 ? off_[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n_; ++i) {
      pivot = diag_[i] - off_[i - 1] * cp[i - 1];
      cp[i] = i + 1 < n_ ? off_[i] / pivot : 0.0;
      x[i] = (rhs[i] - off_[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n_ - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
  }

  const SpatialGrid& grid_;
  const ViscositySpec& vspec_;
  const RegularizerSpec& rspec_;
  Scheme scheme_;
  double tau_;
  std::size_t n_;
  double inv_h_;
  std::span<const double> u_, v_, g_;
  double m_shift_, u_shift_, b_shift_, stiffness_;
  double t_eval_ = 0.0;

  std::vector<double> edge_a_, beta_, m_, ubuf_, flux_, psi_edges_, jp_, lap_;
  std::vector<double> diag_, off_, t1_, t2_, scratch_;
  double m_xnorm_ = 0.0;
  double rho_ = 0.0;
};

} // namespace

State step_with_tau(const State& s, double tau, const SolverConfig& cfg,
                    const ViscositySpec& vspec, const ForcingEnvelope& env) {
  const SpatialGrid& grid = s.u.grid();
  if (!(s.u.grid() == s.v.grid()))
    throw std::invalid_argument("step: u and v on different grids");
  if (vspec.p != grid.p())
    throw std::invalid_argument("step: viscosity exponent != grid exponent");
  if (cfg.rspec.r < vspec.p)
    throw std::invalid_argument("step: regularizer order r must be >= p");

  const double t_sel =
      cfg.scheme == Scheme::backward_euler ? s.t + tau : s.t + 0.5 * tau;
  const GridFunction g =
      select(t_sel, s.u, s.v, s.f_sel ? &*s.f_sel : nullptr, env, cfg.strategy);

  InnerProblem inner(s, tau, cfg, vspec, g);
  const std::size_t n = static_cast<std::size_t>(grid.n());
  std::vector<double> w(s.v.values().begin(), s.v.values().end());
  std::vector<double> residual(n), trial(n), trial_residual(n), delta(n);

  double res = inner.eval(w, residual);
  bool converged = res <= cfg.newton_tol;
  for (int it = 0; it < cfg.newton_max_iter && !converged; ++it) {
    for (std::size_t i = 0; i < n; ++i) residual[i] = -residual[i];
    inner.solve_newton_system(residual, delta);

    double lambda = cfg.damping;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      kernels::axpby(1.0, w, lambda, delta, trial);
      const double res_trial = inner.eval(trial, trial_residual);
      if (res_trial < res || res_trial <= cfg.newton_tol) {
        w.swap(trial);
        residual.swap(trial_residual);
        res = res_trial;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    converged = res <= cfg.newton_tol;
  }
  if (!converged) throw StepFailure(-1, s.t + tau, res);

  GridFunction v_next(grid, std::move(w), Space::primal);
  GridFunction u_next = GridFunction::zeros(grid, Space::primal);
  if (cfg.scheme == Scheme::backward_euler) {
    kernels::axpby(1.0, s.u.values(), tau, v_next.values(), u_next.values());
  } else {
    std::vector<double> m(n);
    kernels::axpby(0.5, s.v.values(), 0.5, v_next.values(), m);
    kernels::axpby(1.0, s.u.values(), tau, std::span<const double>(m),
                   u_next.values());
  }
  return State{s.t + tau, std::move(u_next), std::move(v_next), g};
}

State step(const State& s, const SolverConfig& cfg, const ViscositySpec& vspec,
           const ForcingEnvelope& env) {
  return step_with_tau(s, cfg.tau, cfg, vspec, env);
}

TrajectoryRecord solve_trajectory(const GridFunction& u0,
                                  const GridFunction& u1,
                                  const SolverConfig& cfg,
                                  const ViscositySpec& vspec,
                                  const ForcingEnvelope& env) {
  if (!(u0.grid() == u1.grid()))
    throw std::invalid_argument("solve_trajectory: u0 and u1 grids differ");
  if (!std::isfinite(x_norm(u0)))
    throw std::invalid_argument("solve_trajectory: u0 must have finite X-norm");
  if (!std::isfinite(h_norm(u1)))
    throw std::invalid_argument("solve_trajectory: u1 must have finite H-norm");

  const int steps = step_count(cfg.horizon_b, cfg.tau);
  TrajectoryRecord record{u0.grid(), cfg, {}};
  record.states.reserve(static_cast<std::size_t>(steps) + 1);
  record.states.push_back(State{0.0, u0, u1, std::nullopt});
  for (int k = 1; k <= steps; ++k) {
    const double tau = k < steps
                           ? cfg.tau
                           : cfg.horizon_b - cfg.tau * static_cast<double>(steps - 1);
    try {
      record.states.push_back(
          step_with_tau(record.states.back(), tau, cfg, vspec, env));
    } catch (const StepFailure& f) {
      throw StepFailure(k, f.t, f.residual);
    }
  }
  return record;
}

double inner_residual(const GridFunction& w, const State& s, double tau,
                      const SolverConfig& cfg, const ViscositySpec& vspec,
                      const GridFunction& g) {
  InnerProblem inner(s, tau, cfg, vspec, g);
  std::vector<double> out(w.size());
  return inner.eval(w.values(), out);
}

} // namespace viscowave
