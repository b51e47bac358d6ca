#include "bpc/coupled.hpp"

#include <algorithm>
#include <cmath>

namespace bpc {

double ControlSchedule::operator()(double t) const {
    if (times.empty()) return 0.0;
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const size_t i = static_cast<size_t>(std::distance(times.begin(), it)) - 1;
    if (interp == Interp::PiecewiseConstant) return values[i];
    const double w = (t - times[i]) / (times[i + 1] - times[i]);
    return (1.0 - w) * values[i] + w * values[i + 1];
}

void ControlSchedule::validate() const {
    if (times.size() != values.size())
        throw std::invalid_argument("ControlSchedule: size mismatch");
    for (size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i + 1] > times[i]))
            throw std::invalid_argument("ControlSchedule: time nodes not strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("ControlSchedule: non-finite sample");
}

ControlLaw zero_control() {
    return [](double, double, const CoupledState&) { return 0.0; };
}

ControlLaw schedule_control(ControlSchedule sched) {
    sched.validate();
    return [s = std::move(sched)](double t, double, const CoupledState&) { return s(t); };
}

ParticleState particle_step(const ParticleState& p, double jump, double g, double dt, double m) {
    if (!(m > 0.0) || !(dt > 0.0)) throw std::invalid_argument("particle_step: need m, dt > 0");
    ParticleState out;
    out.ell = p.ell + (dt / m) * (jump + g);
    out.h = p.h + dt * out.ell;
    return out;
}

namespace {

struct CoupledWorkspace {
    SideWorkspace left, right;
    std::vector<double> wl, wr;
};

// advances fields only, motion data fixed; interface continuity exact
void fluid_steps(const CoupledState& s, double h_new, double ell_new, double dt,
                 CoupledState& out, CoupledWorkspace& ws) {
    const double h = s.particle.h;
    ws.wl = canonical_from_side(s.left);
    ws.wr = canonical_from_side(s.right);
    SideStepOptions so;
    // the mesh velocity of the step is the realized (h_new - h)/dt = ell_new
    side_step_canonical(ws.wl, s.left.dy(), h, h_new, ell_new, ell_new, 0.0, s.t, dt, so,
                        ws.left);
    side_step_canonical(ws.wr, s.right.dy(), 1.0 - h, 1.0 - h_new, -ell_new, -ell_new, 0.0, s.t,
                        dt, so, ws.right);
    side_from_canonical(ws.wl, out.left);
    side_from_canonical(ws.wr, out.right);
}

bool finite_state(const CoupledState& s) {
    return s.particle.finite() && s.left.finite() && s.right.finite();
}

StepResult coupled_step_impl(const CoupledState& state, const ControlLaw& law, double dt,
                             const SimConfig& cfg, CoupledWorkspace& ws) {
    StepResult res;
    res.state = state;
    double J = derivative_jump(state.left, state.right, state.particle.h);
    double g = law(state.t, J, state);

    CoupledState cand = state;
    double ell_new = state.particle.ell;
    double h_new = state.particle.h;
    for (int k = 0; k < cfg.coupling_iters; ++k) {
        res.iterations = k + 1;
        const ParticleState pnew = particle_step(state.particle, J, g, dt, cfg.m);
        ell_new = pnew.ell;
        h_new = pnew.h;
        if (!(h_new > cfg.contact_tol && h_new < 1.0 - cfg.contact_tol)) {
            // contact: flag and hand back the state at the contact instant
            res.state.t = state.t + dt;
            res.state.particle = pnew;
            res.state.left.interface_value() = ell_new;
            res.state.right.interface_value() = ell_new;
            res.status = Termination::Contact;
            res.g = g;
            res.jump = J;
            return res;
        }
        fluid_steps(state, h_new, ell_new, dt, cand, ws);
        const double Jn = derivative_jump(cand.left, cand.right, h_new);
        cand.t = state.t + dt;
        cand.particle = {h_new, ell_new};
        const double gn = law(state.t, Jn, cand);
        const double ell_chk = state.particle.ell + (dt / cfg.m) * (Jn + gn);
        const bool done = std::abs(ell_chk - ell_new) < cfg.coupling_tol;
        J = Jn;
        g = gn;
        if (done) break;
    }
    if (!finite_state(cand)) {
        res.status = Termination::NumericalFailure;
        res.state.t = state.t + dt;
        return res;
    }
    res.state = cand;
    res.status = Termination::ReachedFinalTime;
    res.g = g;
    res.jump = J;
    return res;
}

} // namespace

StepResult coupled_step(const CoupledState& state, const ControlLaw& law, double dt,
                        const SimConfig& cfg) {
    state.require_valid("coupled_step");
    if (!(dt > 0.0)) throw std::invalid_argument("coupled_step: dt must be positive");
    CoupledWorkspace ws;
    try {
        return coupled_step_impl(state, law, dt, cfg, ws);
    } catch (const NumericalFailure& nf) {
        StepResult res;
        res.state = state;
        res.state.t = nf.t;
        res.status = Termination::NumericalFailure;
        return res;
    }
}

StepResult coupled_step(const CoupledState& state, double g, double dt, const SimConfig& cfg) {
    return coupled_step(
        state, [g](double, double, const CoupledState&) { return g; }, dt, cfg);
}

RunResult solve(const CoupledState& state0, const ControlLaw& law, double t_end,
                const SimConfig& cfg) {
    state0.require_valid("solve");
    cfg.validate();
    RunResult out;
    out.config = cfg;

    CoupledState s = state0;
    CoupledWorkspace ws;

    auto diag_of = [&](const CoupledState& st, double g, double J) {
        const Norms n = discrete_norms(st);
        return DiagRecord{st.t, st.particle.h, st.particle.ell, g,    J,
                          n.l2, n.linf,        energy(st, cfg.m), dissipation(st)};
    };
    {
        const double J0 = derivative_jump(s);
        out.diag.push_back(diag_of(s, law(s.t, J0, s), J0));
    }
    out.states.push_back(s);

    size_t k = 0;
    const double tol = 1e-14 * std::max(1.0, std::abs(t_end));
    while (s.t < t_end - tol) {
        double dt;
        if (cfg.dt > 0.0) {
            dt = cfg.dt;
        } else {
            const double h = s.particle.h;
            const double spL = side_cfl_speed(s.left.values, h, s.particle.ell);
            const double spR = side_cfl_speed(s.right.values, 1.0 - h, s.particle.ell);
            dt = cfg.dt_max;
            if (spL > 0.0) dt = std::min(dt, cfg.cfl_safety * s.left.dy() / spL);
            if (spR > 0.0) dt = std::min(dt, cfg.cfl_safety * s.right.dy() / spR);
        }
        double tn = s.t + dt;
        if (tn >= t_end - tol) tn = t_end;
        dt = tn - s.t;
        if (dt < cfg.dt_min && tn != t_end) {
            out.termination = Termination::NumericalFailure;
            out.t_term = s.t;
            break;
        }

        StepResult st;
        try {
            st = coupled_step_impl(s, law, dt, cfg, ws);
        } catch (const NumericalFailure& nf) {
            out.termination = Termination::NumericalFailure;
            out.t_term = nf.t;
            break;
        }
        if (st.status == Termination::NumericalFailure) {
            out.termination = Termination::NumericalFailure;
            out.t_term = st.state.t;
            break;
        }
        s = st.state;
        s.t = tn; // land on phase boundaries exactly
        ++k;
        out.diag.push_back(diag_of(s, st.g, st.jump));
        if (st.status == Termination::Contact) {
            out.termination = Termination::Contact;
            out.t_term = s.t;
            out.states.push_back(s);
            return out;
        }
        if (k % static_cast<size_t>(cfg.store_every) == 0 || s.t == t_end)
            out.states.push_back(s);
    }
    if (out.states.back().t != s.t) out.states.push_back(s);
    if (out.termination == Termination::ReachedFinalTime) out.t_term = s.t;
    return out;
}

RunResult solve(const CoupledState& state0, const ControlSchedule& schedule, double t_end,
                const SimConfig& cfg) {
    return solve(state0, schedule_control(schedule), t_end, cfg);
}

double energy(const CoupledState& state, double m) {
    const Norms n = discrete_norms(state);
    return 0.5 * n.l2 * n.l2 + 0.5 * m * state.particle.ell * state.particle.ell;
}

double dissipation(const CoupledState& state) {
    double d = 0.0;
    for (const SideField* f : {&state.left, &state.right}) {
        const double H = f->side == Side::Left ? state.particle.h : 1.0 - state.particle.h;
        const double dy = f->dy();
        double grad = 0.0;
        for (size_t i = 0; i + 1 < f->values.size(); ++i) {
            const double d1 = (f->values[i + 1] - f->values[i]) / dy;
            grad += d1 * d1;
        }
        d += grad * dy / H;
    }
    return d;
}

namespace {

// trapezoidal integral of f(x) u-weighted over one subdomain
template <typename F>
double side_integral(const CoupledState& s, const SideField& f, F&& integrand) {
    const double h = s.particle.h;
    const double H = f.side == Side::Left ? h : 1.0 - h;
    const double dy = f.dy();
    double acc = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) {
        const double y = static_cast<double>(i) * dy;
        const double x = f.side == Side::Left ? h * y : h + (1.0 - h) * y;
        const double w = (i == 0 || i + 1 == f.values.size()) ? 0.5 : 1.0;
        acc += w * integrand(x, f.values[i]);
    }
    return acc * H * dy;
}

template <typename F>
double space_integral(const CoupledState& s, F&& integrand) {
    return side_integral(s, s.left, integrand) + side_integral(s, s.right, integrand);
}

// integral of u_x psi_x with piecewise-linear u and midpoint-sampled psi_x
double grad_integral(const CoupledState& s, const ScalarFn2& psi_x, double t) {
    double acc = 0.0;
    for (const SideField* f : {&s.left, &s.right}) {
        const double h = s.particle.h;
        const double H = f->side == Side::Left ? h : 1.0 - h;
        const double dy = f->dy();
        for (size_t i = 0; i + 1 < f->values.size(); ++i) {
            const double ux = (f->values[i + 1] - f->values[i]) / (H * dy);
            const double ym = (static_cast<double>(i) + 0.5) * dy;
            const double xm = f->side == Side::Left ? h * ym : h + (1.0 - h) * ym;
            acc += ux * psi_x(t, xm) * H * dy;
        }
    }
    return acc;
}

} // namespace

double weak_form_residual(const RunResult& result, const TestPair& pair) {
    if (result.states.size() < 2 || result.diag.size() < 2)
        throw std::invalid_argument("weak_form_residual: trajectory too short");
    if (!pair.psi || !pair.psi_t || !pair.psi_x)
        throw std::invalid_argument("weak_form_residual: incomplete test pair");
    const double m = result.config.m;

    auto xi_of = [&](double t, double h) { return pair.psi(t, h); };
    if (pair.xi) {
        for (const auto& st : result.states) {
            const double want = xi_of(st.t, st.particle.h);
            if (std::abs((*pair.xi)(st.t) - want) > 1e-12 * std::max(1.0, std::abs(want)))
                throw std::invalid_argument(
                    "weak_form_residual: xi(t) != psi(t, h(t)) beyond 1e-12");
        }
    }

    const CoupledState& s0 = result.states.front();
    const CoupledState& sT = result.states.back();

    double lhs = 0.0;
    lhs += space_integral(sT, [&](double x, double u) { return u * pair.psi(sT.t, x); });
    lhs -= space_integral(s0, [&](double x, double u) { return u * pair.psi(s0.t, x); });

    // particle terms, m-weighted
    const double xiT = xi_of(sT.t, sT.particle.h);
    const double xi0 = xi_of(s0.t, s0.particle.h);
    lhs += m * (sT.particle.ell * xiT - s0.particle.ell * xi0);
    {
        double acc = 0.0;
        double prev_t = 0.0, prev_v = 0.0;
        bool first = true;
        for (const auto& d : result.diag) {
            const double xip = pair.psi_t(d.t, d.h) + pair.psi_x(d.t, d.h) * d.ell;
            const double v = d.ell * xip;
            if (!first) acc += 0.5 * (prev_v + v) * (d.t - prev_t);
            prev_t = d.t;
            prev_v = v;
            first = false;
        }
        lhs -= m * acc;
    }

    // space-time terms over the stored trajectory
    {
        double acc_ut = 0.0, acc_grad = 0.0, acc_conv = 0.0;
        double pt = 0.0, put = 0.0, pgr = 0.0, pcv = 0.0;
        bool first = true;
        for (const auto& st : result.states) {
            const double t = st.t;
            const double vut =
                space_integral(st, [&](double x, double u) { return u * pair.psi_t(t, x); });
            const double vgr = grad_integral(st, pair.psi_x, t);
            const double vcv =
                space_integral(st, [&](double x, double u) { return u * u * pair.psi_x(t, x); });
            if (!first) {
                const double dt = t - pt;
                acc_ut += 0.5 * (put + vut) * dt;
                acc_grad += 0.5 * (pgr + vgr) * dt;
                acc_conv += 0.5 * (pcv + vcv) * dt;
            }
            pt = t;
            put = vut;
            pgr = vgr;
            pcv = vcv;
            first = false;
        }
        lhs -= acc_ut;
        lhs += acc_grad;
        lhs -= 0.5 * acc_conv;
    }

    // RHS: g is piecewise constant per step; each diag record past the first
    // carries the control applied on the step ending there
    double rhs = 0.0;
    for (size_t i = 1; i < result.diag.size(); ++i) {
        const auto& a = result.diag[i - 1];
        const auto& b = result.diag[i];
        const double xia = xi_of(a.t, a.h);
        const double xib = xi_of(b.t, b.h);
        rhs += b.g * 0.5 * (xia + xib) * (b.t - a.t);
    }
    return std::abs(lhs - rhs);
}

} // namespace bpc
