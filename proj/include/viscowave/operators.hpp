#pragma once

#include <functional>

#include "viscowave/grid.hpp"

/// The discrete operators of the evolution problem
///
///   u'' + A(t, u') + eps K_r(u') + B u = forcing selection,
///
/// namely: the stiffness B (Dirichlet Laplacian), the viscosity
/// A(t, v) = -d/dz (a(t,z) |v_z|^{p-2} v_z) + beta(z) v, the p-Laplacian J_p,
/// the duality map F(y) = ||y||^{2-p} J_p(y) of W^{1,p}_0, the regularizer
/// K_r(y) = ||y||^{r-2} F(y), and the combined A_eps = A + eps K_r.
///
/// All operators return dual-tagged grid functions; the defining identities
/// <J_p y, y> = ||y||^p, <F y, y> = ||y||^2 and <K_r y, y> = ||y||^r hold
/// exactly on the grid because the X-norm is the gradient seminorm.
namespace viscowave {

/// Damping coefficients of the viscosity operator. `coeff_a` is sampled at
/// edge midpoints, `beta` at nodes; both must be nonnegative and pure.
struct ViscositySpec {
  std::function<double(double t, double z)> coeff_a;
  std::function<double(double z)> beta;
  double p = 2.0;
};

/// Strength and order of the parabolic regularizer eps K_r. The regularized
/// problem uses eps in (0, 1]; eps = 0 is accepted so the unregularized
/// scheme itself can be exercised directly.
struct RegularizerSpec {
  double epsilon = 0.0;
  double r = 2.0;
};

/// B u with the 3-point stencil -(u_{i+1} - 2 u_i + u_{i-1}) / h^2.
/// Symmetric and positive definite: <Bu, w> = h sum_e (Du)_e (Dw)_e.
GridFunction apply_B(const GridFunction& u);

/// Largest c0 with <Bu, u> >= c0 ||u||^2 over a deterministic sample set
/// (coordinate directions plus seeded random vectors). Exactly 1 at p = 2;
/// for p > 2 the reported constant is grid-dependent.
double coercivity_constant(const SpatialGrid& grid);

/// Upper bound on the operator norm of B from X to X*: L^{1 - 2/p}.
double b_operator_norm_bound(const SpatialGrid& grid);

/// A(t, v): edge-based flux divergence of a(t,z) psi(v_z) plus beta(z) v.
GridFunction apply_A(double t, const GridFunction& v,
                     const ViscositySpec& spec);

/// Discrete p-Laplacian J_p(y); <J_p y, y> = ||y||^p.
GridFunction apply_Jp(const GridFunction& y, double p);

/// Duality map F(y) = ||y||^{2-p} J_p(y), F(0) = 0; <F y, y> = ||y||^2.
/// `p` must agree with the grid exponent (the norm and the operator have to
/// use the same p for the closed form to be the duality map).
GridFunction duality_map(const GridFunction& y, double p);

/// K_r(y) = ||y||^{r-p} J_p(y), K_r(0) = 0; <K_r y, y> = ||y||^r.
GridFunction apply_Kr(const GridFunction& y, const RegularizerSpec& spec,
                      double p);

/// A_eps(t, v) = A(t, v) + eps K_r(v); <A_eps v, v> >= eps ||v||^r.
GridFunction apply_A_eps(double t, const GridFunction& v,
                         const ViscositySpec& vspec,
                         const RegularizerSpec& rspec);

} // namespace viscowave
