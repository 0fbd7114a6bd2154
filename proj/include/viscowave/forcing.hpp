#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "viscowave/grid.hpp"

/// The set-valued right-hand side
///
///   F(t, u, v) = [f_l(t,z,u), f_u(t,z,u)] + gamma v
///
/// built by filling in the gaps of a piecewise-continuous f at its jump
/// points (Filippov fill-in), together with the single-valued selection
/// strategies the stepper draws from it.
namespace viscowave {

using EnvelopeFn = std::function<double(double t, double z, double x)>;

/// Interval envelope [f_lower, f_upper] plus the explicit gamma*v term and
/// the growth coefficient a2 with |f_l|, |f_u| <= a2(t,z) (1 + |x|).
/// Envelope functions must be pure and reentrant.
struct ForcingEnvelope {
  EnvelopeFn f_lower;
  EnvelopeFn f_upper;
  double gamma = 0.0;
  std::function<double(double t, double z)> growth_a2;
};

enum class SelectionStrategy { lower, upper, midpoint, closest_to_previous };

SelectionStrategy selection_strategy_from_string(const std::string& name);
std::string to_string(SelectionStrategy s);

/// One branch of a piecewise definition: f restricted to [x_lo, x_hi].
/// Branch functions are assumed continuous up to the closed interval ends,
/// so one-sided limits at a jump are plain evaluations.
struct Branch {
  double x_lo;
  double x_hi;
  EnvelopeFn f;
};

/// Build the fill-in envelope of a piecewise function. At a jump point the
/// value set is [min, max] over all branches whose closure contains it;
/// elsewhere the envelope is degenerate. Branches must cover the real line;
/// branches overlapping on an interval must agree there (checked on a sample,
/// contradictions are an error).
ForcingEnvelope envelope_from_piecewise(
    std::vector<Branch> branches, std::vector<double> jumps, double gamma,
    std::function<double(double, double)> growth_a2);

/// Nodal selection g with g_i in [f_lower, f_upper](t, z_i, u_i) + gamma v_i.
/// `prev` (the previous total selection) is only consulted by
/// closest_to_previous, which falls back to midpoint when prev is absent.
/// The result is H-valued (primal tag).
GridFunction select(double t, const GridFunction& u, const GridFunction& v,
                    const GridFunction* prev, const ForcingEnvelope& env,
                    SelectionStrategy strategy);

struct GrowthCheck {
  bool pass = false;
  double margin = 0.0;   // bound - realized
  double bound = 0.0;    // a2_bar(t) (1 + |u| + |v|)
  double realized = 0.0; // |g|
};

/// H-norm growth check |g| <= a2_bar(t) (1 + |u| + |v|) with a2_bar assembled
/// from growth_a2 and gamma (see assembled_a2_bar).
GrowthCheck growth_bound_check(double t, const GridFunction& u,
                               const GridFunction& v, const GridFunction& g,
                               const ForcingEnvelope& env);

/// a2_bar(t) = max(sqrt(2) max_z a2(t,z) max(sqrt(L), 1), gamma). With this
/// constant the nodal growth bound implies the H-norm bound above.
double assembled_a2_bar(const ForcingEnvelope& env, const SpatialGrid& grid,
                        double t);

/// Built-in forcings addressable by key: "identity" (f(x) = x),
/// "sine_gordon" (f(x) = eta sin x), "relay" (f(x) = sign x, filled in),
/// "zero". Unknown keys raise an error listing the valid names.
ForcingEnvelope make_forcing(const std::string& key, double eta, double gamma);

std::vector<std::string> forcing_keys();

} // namespace viscowave
