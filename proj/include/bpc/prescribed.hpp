#pragma once

#include "bpc/errors.hpp"
#include "bpc/motion.hpp"
#include "bpc/scheme.hpp"
#include "bpc/types.hpp"

namespace bpc {

/// Options of the prescribed-motion solver. A zero dt selects the adaptive
/// step dt = cfl_safety * dy / max(|W| conv + |drift|), capped by dt_max.
struct PrescribedOptions {
    double dt = 0.0;
    double cfl_safety = 0.5;
    double dt_max = 2e-3;
    double dt_min = 1e-12;
    int store_every = 1;
    bool lifted = false;     // test-only: solve the lifted homogeneous form
    bool convection = true;  // test-only: heat-equation regime when false
    const ScalarFn2* source = nullptr; // s(t, x) in physical coordinates
};

/// One time step of one subdomain under prescribed motion. Boundary values
/// after the step are exact: 0 at the wall, h'(t+dt) at the interface
/// (wall-frame sign on the right).
SideField step_prescribed(const SideField& field, const PrescribedMotion& motion, double t,
                          double dt, const PrescribedOptions& opt = {});

/// step_prescribed with a manufactured source added to the right-hand side;
/// the scheme is otherwise identical.
SideField apply_manufactured_source(const SideField& field, const PrescribedMotion& motion,
                                    double t, double dt, const ScalarFn2& source_physical,
                                    const PrescribedOptions& opt = {});

/// Trajectory of the two-sided prescribed-motion problem. The interface
/// sample equals h'(t) at every node; jump and h'' are recorded at every
/// time node for control synthesis.
struct PrescribedSolution {
    std::vector<double> times;
    std::vector<double> jumps; // derivative jump across the interface
    std::vector<double> hpp;   // motion second derivative at the nodes
    std::vector<CoupledState> states; // decimated; first and last always kept
    CoupledState final_state;
};

PrescribedSolution solve_prescribed(const SideField& left0, const SideField& right0,
                                    const PrescribedMotion& motion, double t0, double t1,
                                    const PrescribedOptions& opt = {});

/// Second-order one-sided interface slopes through the map Jacobians;
/// returns (right derivative) - (left derivative) of u at the particle.
double derivative_jump(const CoupledState& state);

/// Jump from raw side fields and particle position (prescribed-motion path).
double derivative_jump(const SideField& left, const SideField& right, double h);

} // namespace bpc
