#include "bpc/prescribed.hpp"

#include <cmath>

namespace bpc {

namespace {

struct WallFrame {
    double H_old, H_new, Hp_old, Hp_new, Hpp_old;
};

WallFrame wall_frame(Side side, const PrescribedMotion& m, double t, double tn) {
    if (side == Side::Left) return {m.h(t), m.h(tn), m.hp(t), m.hp(tn), m.hpp(t)};
    return {1.0 - m.h(t), 1.0 - m.h(tn), -m.hp(t), -m.hp(tn), -m.hpp(t)};
}

// physical-frame source restricted to one side's canonical frame
ScalarFn2 canonical_source(Side side, double H_old, const ScalarFn2& s) {
    if (side == Side::Left)
        return [&s, H_old](double t, double y) { return s(t, H_old * y); };
    return [&s, H_old](double t, double y) { return -s(t, 1.0 - H_old * y); };
}

void check_finite(const std::vector<double>& w, double t) {
    for (double v : w)
        if (!std::isfinite(v)) throw NumericalFailure(t);
}

SideField step_side(const SideField& field, const PrescribedMotion& motion, double t, double dt,
                    const PrescribedOptions& opt, SideWorkspace& ws) {
    const double tn = t + dt;
    const WallFrame fr = wall_frame(field.side, motion, t, tn);
    std::vector<double> w = canonical_from_side(field);

    SideStepOptions so;
    so.convection = opt.convection;
    so.lifted = opt.lifted;
    ScalarFn2 src;
    if (opt.source) {
        src = canonical_source(field.side, fr.H_old, *opt.source);
        so.source = &src;
    }
    side_step_canonical(w, field.dy(), fr.H_old, fr.H_new, fr.Hp_old, fr.Hp_new, fr.Hpp_old, t,
                        dt, so, ws);
    check_finite(w, tn);

    SideField out = field;
    side_from_canonical(w, out);
    return out;
}

} // namespace

SideField step_prescribed(const SideField& field, const PrescribedMotion& motion, double t,
                          double dt, const PrescribedOptions& opt) {
    SideWorkspace ws;
    return step_side(field, motion, t, dt, opt, ws);
}

SideField apply_manufactured_source(const SideField& field, const PrescribedMotion& motion,
                                    double t, double dt, const ScalarFn2& source_physical,
                                    const PrescribedOptions& opt) {
    PrescribedOptions o = opt;
    o.source = &source_physical;
    SideWorkspace ws;
    return step_side(field, motion, t, dt, o, ws);
}

double derivative_jump(const SideField& left, const SideField& right, double h) {
    // outward slope at the interface of a canonical field: (3 w[k] - 4 w[k-1]
    // + w[k-2]) / (2 dy H). Written so both sides execute mirrored float ops.
    const auto& L = left.values;
    const size_t a = L.size() - 1;
    const double dL = (3.0 * L[a] - 4.0 * L[a - 1] + L[a - 2]) / (2.0 * left.dy() * h);
    const auto& R = right.values;
    const double dR = (-3.0 * R[0] + 4.0 * R[1] - R[2]) / (2.0 * right.dy() * (1.0 - h));
    return dR - dL;
}

double derivative_jump(const CoupledState& state) {
    state.require_valid("derivative_jump");
    return derivative_jump(state.left, state.right, state.particle.h);
}

PrescribedSolution solve_prescribed(const SideField& left0, const SideField& right0,
                                    const PrescribedMotion& motion, double t0, double t1,
                                    const PrescribedOptions& opt) {
    if (!(t1 > t0)) throw std::invalid_argument("solve_prescribed: empty time span");
    if (!motion.covers(t0, t1)) throw std::invalid_argument("solve_prescribed: motion does not cover span");
    const double hp0 = motion.hp(t0);
    const double scale = std::max(1.0, std::abs(hp0));
    if (std::abs(left0.interface_value() - hp0) > 1e-9 * scale ||
        std::abs(right0.interface_value() - hp0) > 1e-9 * scale)
        throw std::invalid_argument("solve_prescribed: initial data incompatible with h'(t0)");

    CoupledState s;
    s.t = t0;
    s.left = left0;
    s.right = right0;
    // project the interface samples onto the prescribed speed (sub-rounding
    // mismatches are allowed by the compatibility tolerance above)
    s.left.interface_value() = hp0;
    s.right.interface_value() = hp0;
    s.particle = {motion.h(t0), hp0};

    PrescribedSolution sol;
    auto record = [&](bool force_store, size_t step_index) {
        sol.times.push_back(s.t);
        sol.jumps.push_back(derivative_jump(s.left, s.right, s.particle.h));
        sol.hpp.push_back(motion.hpp(s.t));
        if (force_store || step_index % static_cast<size_t>(opt.store_every) == 0)
            sol.states.push_back(s);
    };
    record(true, 0);

    SideWorkspace wsL, wsR;
    size_t k = 0;
    double t = t0;
    while (t < t1 - 1e-14 * std::max(1.0, std::abs(t1))) {
        double dt;
        if (opt.dt > 0.0) {
            dt = opt.dt;
        } else {
            const double h = motion.h(t);
            const double hp = motion.hp(t);
            const double spL = side_cfl_speed(s.left.values, h, hp);
            const double spR = side_cfl_speed(s.right.values, 1.0 - h, hp);
            dt = opt.dt_max;
            if (spL > 0.0) dt = std::min(dt, opt.cfl_safety * s.left.dy() / spL);
            if (spR > 0.0) dt = std::min(dt, opt.cfl_safety * s.right.dy() / spR);
        }
        double tn = t + dt;
        if (tn >= t1 - 1e-14 * std::max(1.0, std::abs(t1))) tn = t1;
        dt = tn - t;
        if (dt < opt.dt_min && tn != t1) throw NumericalFailure(t);

        s.left = step_side(s.left, motion, t, dt, opt, wsL);
        s.right = step_side(s.right, motion, t, dt, opt, wsR);
        t = tn;
        s.t = t;
        s.particle = {motion.h(t), motion.hp(t)};
        ++k;
        record(t >= t1, k);
    }
    sol.final_state = s;
    if (sol.states.empty() || sol.states.back().t != s.t) sol.states.push_back(s);
    return sol;
}

} // namespace bpc
