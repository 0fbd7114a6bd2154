#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "viscowave/forcing.hpp"
#include "viscowave/grid.hpp"
#include "viscowave/operators.hpp"

/// Implicit Rothe time discretization of
///
///   u'' + A(t, u') + eps K_r(u') + B u = g,   g selected from F(t, u, u'),
///
/// one monotone nonlinear solve per step. For backward Euler the new velocity
/// w solves
///
///   G(w) = (w - v)/tau + A(t+, w) + eps K_r(w) + B(u + tau w) - g = 0
///
/// with the selection g frozen at the previous state (the gamma v part of the
/// forcing is explicit), and u+ = u + tau w. G is strictly monotone, so the
/// step is uniquely solvable; Newton with backtracking damping solves it. The
/// Newton matrix is tridiagonal plus the rank-one term contributed by the
/// scalar factor ||w||^{r-p} of K_r, handled by a Sherman-Morrison update
/// around the Thomas solve.
namespace viscowave {

enum class Scheme { backward_euler, midpoint };

Scheme scheme_from_string(const std::string& name);
std::string to_string(Scheme s);

struct SolverConfig {
  double tau = 1e-3;
  double horizon_b = 1.0;
  Scheme scheme = Scheme::backward_euler;
  double newton_tol = 1e-11; // on the H-norm of the inner residual
  int newton_max_iter = 50;
  double damping = 1.0; // initial Newton damping, halved on rejection
  RegularizerSpec rspec;
  SelectionStrategy strategy = SelectionStrategy::midpoint;
  /// Multiplies the stiffness term; 1 for the physical problem. 0 isolates
  /// the velocity equation (free-drift and oracle tests).
  double stiffness_scale = 1.0;
};

struct State {
  double t = 0.0;
  GridFunction u;
  GridFunction v;
  /// Selection used to produce this state; empty at t = 0.
  std::optional<GridFunction> f_sel;
};

struct TrajectoryRecord {
  SpatialGrid grid;
  SolverConfig config;
  std::vector<State> states;
};

/// Raised when the inner Newton solve cannot reach `newton_tol` within
/// `newton_max_iter` iterations. solve_trajectory rethrows with the step
/// index filled in; callers may retry with a smaller tau.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(int step_index, double t, double residual);
  int step_index;
  double t;
  double residual;
};

/// One implicit step of length cfg.tau from state s.
State step(const State& s, const SolverConfig& cfg, const ViscositySpec& vspec,
           const ForcingEnvelope& env);

/// As `step` but with an explicit step length (the final step of a horizon
/// is usually shorter).
State step_with_tau(const State& s, double tau, const SolverConfig& cfg,
                    const ViscositySpec& vspec, const ForcingEnvelope& env);

/// March from (0, u0, u1) to cfg.horizon_b, recording every state and
/// selection. Deterministic: identical inputs give bitwise-identical records.
TrajectoryRecord solve_trajectory(const GridFunction& u0,
                                  const GridFunction& u1,
                                  const SolverConfig& cfg,
                                  const ViscositySpec& vspec,
                                  const ForcingEnvelope& env);

/// H-norm of the inner residual G(w) at trial velocity w, with the frozen
/// selection g supplied by the caller. Zero iff w solves the step exactly.
double inner_residual(const GridFunction& w, const State& s, double tau,
                      const SolverConfig& cfg, const ViscositySpec& vspec,
                      const GridFunction& g);

/// Number of steps used to cover [0, b] with step tau (last possibly short).
int step_count(double horizon_b, double tau);

} // namespace viscowave
