#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpc {

enum class Side { Left, Right };

/// Particle position h in (0,1) and velocity ell at one instant.
struct ParticleState {
    double h = 0.5;
    double ell = 0.0;

    bool finite() const { return std::isfinite(h) && std::isfinite(ell); }
    bool interior(double tol = 0.0) const { return h > tol && h < 1.0 - tol; }
};

/// Fluid velocity samples of one subdomain on its uniform reference grid
/// y in [0,1], endpoints included (n interior nodes, n+2 samples).
///
/// Left: values[0] is the wall x=0, values[n+1] the interface.
/// Right: values[0] is the interface, values[n+1] the wall x=1.
struct SideField {
    Side side = Side::Left;
    int n = 0;
    std::vector<double> values;

    SideField() = default;
    SideField(Side s, int n_interior)
        : side(s), n(n_interior), values(static_cast<size_t>(n_interior) + 2, 0.0) {
        if (n_interior < 3)
            throw std::invalid_argument("SideField: need at least 3 interior nodes");
    }

    double dy() const { return 1.0 / (n + 1); }
    double interface_value() const { return side == Side::Left ? values.back() : values.front(); }
    double& interface_value() { return side == Side::Left ? values.back() : values.front(); }
    double wall_value() const { return side == Side::Left ? values.front() : values.back(); }

    bool finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Full discrete state of the coupled system: both subdomain fields,
/// the particle, and the current time.
struct CoupledState {
    double t = 0.0;
    SideField left;
    SideField right;
    ParticleState particle;

    CoupledState() = default;
    CoupledState(double time, int n_left, int n_right, ParticleState p)
        : t(time), left(Side::Left, n_left), right(Side::Right, n_right), particle(p) {
        left.values.back() = p.ell;
        right.values.front() = p.ell;
    }

    /// Interface samples must equal the particle velocity exactly; this is
    /// maintained by construction and checked, never repaired.
    bool valid(double interior_tol = 0.0) const {
        return particle.finite() && particle.interior(interior_tol) && left.finite() &&
               right.finite() && left.side == Side::Left && right.side == Side::Right &&
               left.values.back() == particle.ell && right.values.front() == particle.ell &&
               left.values.front() == 0.0 && right.values.back() == 0.0;
    }

    void require_valid(const char* who) const {
        if (!valid()) throw std::invalid_argument(std::string(who) + ": invalid coupled state");
    }
};

/// Solver configuration shared by the coupled and prescribed-motion runs.
struct SimConfig {
    double m = 1.0;          // particle mass
    int n_left = 200;        // interior nodes, left subdomain
    int n_right = 200;       // interior nodes, right subdomain
    double dt = 0.0;         // fixed step; 0 selects the adaptive CFL step
    double cfl_safety = 0.5; // safety factor of the explicit convection CFL
    double dt_max = 2e-3;    // cap for the adaptive step
    double dt_min = 1e-12;   // below this the run is declared failed
    double delta = 0.05;     // terminal smallness target
    double h_target = 0.6;
    double contact_tol = 1e-3;  // distance to a wall at which contact is declared
    int coupling_iters = 3;     // fixed-point sub-iteration cap
    double coupling_tol = 1e-10;// interface residual tolerance
    int store_every = 1;        // trajectory decimation (first/last always kept)

    void validate() const {
        auto bad = [](const char* k) {
            throw std::invalid_argument(std::string("SimConfig: invalid ") + k);
        };
        if (!(m > 0.0)) bad("m");
        if (n_left < 3) bad("n_left");
        if (n_right < 3) bad("n_right");
        if (dt < 0.0 || !std::isfinite(dt)) bad("dt");
        if (!(cfl_safety > 0.0)) bad("cfl_safety");
        if (!(dt_max > 0.0)) bad("dt_max");
        if (!(delta > 0.0)) bad("delta");
        if (!(contact_tol > 0.0 && contact_tol < 0.5)) bad("contact_tol");
        if (!(h_target > contact_tol && h_target < 1.0 - contact_tol)) bad("h_target");
        if (coupling_iters < 1) bad("coupling_iters");
        if (!(coupling_tol > 0.0)) bad("coupling_tol");
        if (store_every < 1) bad("store_every");
    }
};

} // namespace bpc
