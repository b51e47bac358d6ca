#include "bpc/control.hpp"

#include <cmath>

#include "bpc/mapping.hpp"
#include "bpc/presets.hpp"

namespace bpc {

ReferenceTrajectory::ReferenceTrajectory(double T0, double T1, double phi0, double dphi0,
                                         double phi1, double h_start, double ell_start,
                                         double h_target)
    : t0_(T0), t1_(T1), phi0_(phi0), dphi0_(dphi0), phi1_(phi1), h_start_(h_start),
      ell_start_(ell_start), h_target_(h_target) {}

double ReferenceTrajectory::phi(double t) const {
    const double D = t1_ - t0_;
    const double s = (t - t0_) / D;
    const double H00 = (2.0 * s - 3.0) * s * s + 1.0;
    const double H10 = ((s - 2.0) * s + 1.0) * s;
    const double H01 = (3.0 - 2.0 * s) * s * s;
    return H00 * phi0_ + H10 * (D * dphi0_) + H01 * phi1_;
}

double ReferenceTrajectory::phi_p(double t) const {
    const double D = t1_ - t0_;
    const double s = (t - t0_) / D;
    const double dH00 = 6.0 * s * s - 6.0 * s;
    const double dH10 = 3.0 * s * s - 4.0 * s + 1.0;
    const double dH01 = -6.0 * s * s + 6.0 * s;
    return (dH00 * phi0_ + dH10 * (D * dphi0_) + dH01 * phi1_) / D;
}

double ReferenceTrajectory::phi_pp(double t) const {
    const double D = t1_ - t0_;
    const double s = (t - t0_) / D;
    const double ddH00 = 12.0 * s - 6.0;
    const double ddH10 = 6.0 * s - 4.0;
    const double ddH01 = -12.0 * s + 6.0;
    return (ddH00 * phi0_ + ddH10 * (D * dphi0_) + ddH01 * phi1_) / (D * D);
}

double ReferenceTrajectory::h(double t) const { return 0.5 * (1.0 + std::sin(phi(t))); }

double ReferenceTrajectory::h_p(double t) const { return 0.5 * std::cos(phi(t)) * phi_p(t); }

double ReferenceTrajectory::h_pp(double t) const {
    const double p = phi(t);
    const double dp = phi_p(t);
    return 0.5 * (std::cos(p) * phi_pp(t) - std::sin(p) * dp * dp);
}

PrescribedMotion ReferenceTrajectory::motion() const {
    PrescribedMotion m;
    m.h = [r = *this](double t) { return r.h(t); };
    m.hp = [r = *this](double t) { return r.h_p(t); };
    m.hpp = [r = *this](double t) { return r.h_pp(t); };
    m.t_start = t0_;
    m.t_end = t1_;
    return m;
}

std::pair<double, double> ReferenceTrajectory::h_range(int n_samples) const {
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i <= n_samples; ++i) {
        const double t = t0_ + (t1_ - t0_) * static_cast<double>(i) / n_samples;
        const double v = h(t);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

ReferenceTrajectory build_reference(double h_start, double ell_start, double h_target, double T0,
                                    double T1) {
    if (!(T1 > T0)) throw std::invalid_argument("build_reference: need T1 > T0");
    if (!(h_target > 0.0 && h_target < 1.0))
        throw std::invalid_argument("build_reference: h_target outside (0,1)");
    if (!(h_start > 1e-9 && h_start < 1.0 - 1e-9))
        throw std::domain_error("build_reference: h_start degenerates the arcsin data");
    const double z0 = 2.0 * h_start - 1.0;
    const double phi0 = std::asin(z0);
    const double dphi0 = 2.0 * ell_start / std::sqrt(1.0 - z0 * z0);
    const double phi1 = std::asin(2.0 * h_target - 1.0);
    return ReferenceTrajectory(T0, T1, phi0, dphi0, phi1, h_start, ell_start, h_target);
}

double decay_horizon(double delta, DecayNorm norm_kind) {
    if (!(delta > 0.0)) throw std::domain_error("decay_horizon: delta must be positive");
    // sup_x max(x, 1-x) = 1;  integral of max(x,1-x)^2 over (0,1) = 7/12
    return norm_kind == DecayNorm::Sup ? 1.0 / delta : std::sqrt(7.0 / 12.0) / delta;
}

double hold_control_step(const CoupledState& state) { return -derivative_jump(state); }

ControlLaw hold_law() {
    return [](double, double jump, const CoupledState&) { return -jump; };
}

SmoothingResult smoothing_phase(const std::function<double(double)>& u0, double h0, double ell0,
                                double T0_duration, const SimConfig& cfg) {
    if (!(T0_duration > 0.0))
        throw std::invalid_argument("smoothing_phase: duration must be positive");
    if (!(h0 > cfg.contact_tol && h0 < 1.0 - cfg.contact_tol))
        throw std::invalid_argument("smoothing_phase: h0 not interior");

    const CoupledState s0 = make_initial_state(u0, h0, ell0, cfg.n_left, cfg.n_right);
    SmoothingResult res;
    res.duration = T0_duration;
    while (true) {
        res.run = solve(s0, zero_control(), res.duration, cfg);
        if (res.run.termination == Termination::ReachedFinalTime) break;
        if (res.run.termination == Termination::NumericalFailure)
            throw NumericalFailure(res.run.t_term);
        res.duration *= 0.5;
        ++res.retries;
        if (res.duration < 1e-4)
            throw std::runtime_error("smoothing_phase: contact persists above the duration floor");
    }
    res.state = res.run.states.back();
    res.h1_seminorm = discrete_norms(res.state).h1;
    return res;
}

TrackingControl tracking_control(const CoupledState& state_T0, const ReferenceTrajectory& ref,
                                 const SimConfig& cfg) {
    state_T0.require_valid("tracking_control");
    const double dell = std::abs(state_T0.particle.ell - ref.ell_start());
    const double dh = std::abs(state_T0.particle.h - ref.h_start());
    if (dh > 1e-12 || dell > 1e-9 * std::max(1.0, std::abs(ref.ell_start())))
        throw std::invalid_argument("tracking_control: reference does not start from the state");

    PrescribedOptions opt;
    opt.dt = cfg.dt;
    opt.cfl_safety = cfg.cfl_safety;
    opt.dt_max = cfg.dt_max;
    opt.dt_min = cfg.dt_min;
    opt.store_every = cfg.store_every;
    TrackingControl out;
    out.prediction =
        solve_prescribed(state_T0.left, state_T0.right, ref.motion(), ref.T0(), ref.T1(), opt);

    out.schedule.interp = ControlSchedule::Interp::Linear;
    out.schedule.times = out.prediction.times;
    out.schedule.values.resize(out.prediction.times.size());
    for (size_t i = 0; i < out.schedule.times.size(); ++i)
        out.schedule.values[i] = cfg.m * out.prediction.hpp[i] - out.prediction.jumps[i];
    return out;
}

OleinikReport oleinik_check(const RunResult& result, double T1, double t_min) {
    OleinikReport rep;
    for (const auto& st : result.states) {
        const double tau = st.t - T1;
        if (!(tau > 0.0) || tau < t_min) continue;
        const double h = st.particle.h;
        for (const SideField* f : {&st.left, &st.right}) {
            const double dy = f->dy();
            for (size_t i = 0; i < f->values.size(); ++i) {
                const double y = static_cast<double>(i) * dy;
                const double x = f->side == Side::Left ? h * y : h + (1.0 - h) * y;
                const double u = f->values[i];
                const double v = std::max(u - x / tau, -(1.0 - x) / tau - u);
                ++rep.samples;
                if (v > rep.max_violation) {
                    rep.max_violation = v;
                    rep.t_at = st.t;
                    rep.x_at = x;
                }
            }
        }
    }
    rep.max_violation = std::max(rep.max_violation, 0.0);
    return rep;
}

StrategyOutcome run_global_strategy(const std::function<double(double)>& u0, double h0,
                                    double ell0, double h_target, double delta,
                                    const SimConfig& cfg_in, const StrategyParams& params) {
    SimConfig cfg = cfg_in;
    cfg.delta = delta;
    cfg.h_target = h_target;
    cfg.validate();

    StrategyOutcome out;
    StrategyReport& rep = out.report;
    rep.delta = delta;
    rep.h_target = h_target;
    rep.hold_duration = decay_horizon(delta, params.norm_kind);

    // Step 1: parabolic smoothing with g = 0
    SmoothingResult smooth;
    try {
        smooth = smoothing_phase(u0, h0, ell0, params.t0_duration, cfg);
    } catch (const std::exception& e) {
        rep.failed_phase = StrategyPhase::Smoothing;
        rep.message = e.what();
        return out;
    }
    out.smoothing = smooth.run;
    rep.T0 = smooth.state.t;
    rep.smoothing_h1 = smooth.h1_seminorm;
    rep.smoothing_duration = smooth.duration;
    rep.smoothing_retries = smooth.retries;

    // Step 2: reference trajectory and tracking control
    rep.T1 = rep.T0 + params.tracking_duration;
    ReferenceTrajectory ref = [&]() {
        return build_reference(smooth.state.particle.h, smooth.state.particle.ell, h_target,
                               rep.T0, rep.T1);
    }();
    std::tie(rep.ref_h_min, rep.ref_h_max) = ref.h_range();
    if (rep.ref_h_min <= cfg.contact_tol || rep.ref_h_max >= 1.0 - cfg.contact_tol) {
        rep.failed_phase = StrategyPhase::Tracking;
        rep.message = "reference trajectory grazes a wall (large interface speed at T0); "
                      "shorten the tracking window or smooth longer";
        return out;
    }

    TrackingControl tc;
    try {
        tc = tracking_control(smooth.state, ref, cfg);
    } catch (const std::exception& e) {
        rep.failed_phase = StrategyPhase::Tracking;
        rep.message = e.what();
        return out;
    }
    out.schedule = tc.schedule;

    ControlLaw replay_law;
    if (params.closed_loop_tracking) {
        replay_law = [m = cfg.m, ref](double t, double jump, const CoupledState&) {
            return m * ref.h_pp(t) - jump;
        };
    } else {
        replay_law = schedule_control(tc.schedule);
    }
    out.replay = solve(smooth.state, replay_law, rep.T1, cfg);
    if (out.replay.termination != Termination::ReachedFinalTime) {
        rep.failed_phase = StrategyPhase::Tracking;
        rep.message = out.replay.termination == Termination::Contact
                          ? "contact during tracking replay"
                          : "numerical failure during tracking replay";
        return out;
    }

    // Step 3 handoff: the paper's construction ends Step 2 exactly at
    // (h_target, 0); the discrete replay misses by the tracking error, which
    // is recorded and then projected out, the same class of perturbation as
    // the initial-data projection.
    CoupledState hold0 = out.replay.states.back();
    rep.handoff_err_h = std::abs(hold0.particle.h - h_target);
    rep.handoff_err_ell = std::abs(hold0.particle.ell);
    hold0.particle = {h_target, 0.0};
    hold0.left.interface_value() = 0.0;
    hold0.right.interface_value() = 0.0;

    rep.T2 = rep.T1 + rep.hold_duration;
    out.hold = solve(hold0, hold_law(), rep.T2, cfg);
    if (out.hold.termination != Termination::ReachedFinalTime) {
        rep.failed_phase = StrategyPhase::Hold;
        rep.message = out.hold.termination == Termination::Contact
                          ? "contact during hold"
                          : "numerical failure during hold";
        return out;
    }

    out.terminal = out.hold.states.back();
    const Norms n = discrete_norms(out.terminal);
    rep.err_h = std::abs(out.terminal.particle.h - h_target);
    rep.err_ell = std::abs(out.terminal.particle.ell);
    rep.l2 = n.l2;
    rep.linf = n.linf;
    const double norm_used = params.norm_kind == DecayNorm::Sup ? n.linf : n.l2;
    rep.pass = norm_used <= delta * (1.0 + params.slack) && rep.err_h <= params.tol_h &&
               rep.err_ell <= params.tol_ell;
    if (!rep.pass) rep.message = "terminal smallness checks failed";
    return out;
}

} // namespace bpc
