#pragma once

#include <utility>

#include "bpc/types.hpp"

namespace bpc {

struct Norms {
    double l2 = 0.0;   // L2 norm of u over (0,1)
    double linf = 0.0; // sup of the grid samples
    double h1 = 0.0;   // discrete H1 seminorm
};

/// Trapezoidal quadrature on each mapped subdomain with Jacobians h, 1-h.
Norms discrete_norms(const CoupledState& state);

/// Physical-grid snapshot: monotone x samples spanning [0,1] with linear
/// interpolation in reference coordinates; the particle location is always
/// one of the samples, carrying the particle velocity.
std::vector<std::pair<double, double>> reconstruct_physical(const CoupledState& state, int n_out);

/// u at a physical point by linear interpolation on the owning side's grid.
double sample_physical(const CoupledState& state, double x);

} // namespace bpc
