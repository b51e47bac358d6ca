#pragma once

#include <functional>
#include <vector>

#include "bpc/mapping.hpp"
#include "bpc/types.hpp"

namespace bpc {

/// Space-time scalar function; the coordinate convention is the caller's.
using ScalarFn2 = std::function<double(double, double)>;

/// One step of the mapped one-sided Burgers equation in the wall-anchored
/// canonical frame: grid y in [0,1] with y=0 at the side's own wall, field
/// oriented away from the wall. Both subdomains run through this one code
/// path (the right side is conjugated by the mirror map), which makes the
/// scheme exactly mirror-symmetric.
///
/// Diffusion is backward Euler with the coefficient frozen at the new time;
/// convection (skew split 1/2 u u_y + 1/4 (u^2)_y), mesh drift and forcing
/// are explicit. Boundary values are imposed exactly: 0 at the wall,
/// Hp_new at the interface.
struct SideStepOptions {
    bool convection = true; // disabled only by diagnostic tests (heat regime)
    bool lifted = false;    // solve the homogeneous-boundary lifted variant
    const ScalarFn2* source = nullptr; // s(t, y) in the canonical frame
};

struct SideWorkspace {
    std::vector<double> rhs;
    std::vector<double> cp;
    std::vector<double> lift;
};

/// w has n+2 samples; H_* is the subdomain width, Hp_* its rate of change
/// (wall-frame interface speed), Hpp the second derivative for the lifted
/// forcing. Advances in place from t to t+dt.
void side_step_canonical(std::vector<double>& w, double dy, double H_old, double H_new,
                         double Hp_old, double Hp_new, double Hpp_old, double t, double dt,
                         const SideStepOptions& opt, SideWorkspace& ws);

/// Stable CFL bound of the explicit terms for one canonical side.
double side_cfl_speed(const std::vector<double>& w, double H, double Hp);

/// Subtract the affine interface lift from one side's samples (spec
/// orientation). The interface sample must equal h_prime; the result
/// vanishes at both ends of the side's interval.
std::vector<double> lift(const std::vector<double>& u_samples, double h, double h_prime,
                         Side side);

/// Canonical frame conversions. Left fields are already canonical; right
/// fields are reversed and negated (exact involution).
std::vector<double> canonical_from_side(const SideField& f);
void side_from_canonical(const std::vector<double>& w, SideField& f);

/// Solves (1+2a) x_i - a x_{i-1} - a x_{i+1} = r_i, i=0..k-1 in place.
void thomas_constant(std::vector<double>& r, double a, std::vector<double>& cp_scratch);

} // namespace bpc
