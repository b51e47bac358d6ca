#pragma once

#include <functional>
#include <string>

#include "bpc/coupled.hpp"
#include "bpc/motion.hpp"

namespace bpc {

/// Smooth reference trajectory h(t) = (1 + sin phi(t))/2 with phi the unique
/// cubic Hermite interpolant of the arcsin endpoint data. By construction
/// h matches (h_start, ell_start) at T0 and arrives at h_target with zero
/// velocity at T1.
class ReferenceTrajectory {
  public:
    ReferenceTrajectory(double T0, double T1, double phi0, double dphi0, double phi1,
                        double h_start, double ell_start, double h_target);

    double phi(double t) const;
    double phi_p(double t) const;
    double phi_pp(double t) const;

    double h(double t) const;
    double h_p(double t) const;
    double h_pp(double t) const;

    double T0() const { return t0_; }
    double T1() const { return t1_; }
    double h_start() const { return h_start_; }
    double ell_start() const { return ell_start_; }
    double h_target() const { return h_target_; }

    PrescribedMotion motion() const;

    /// min/max of h over a fine sample; the construction keeps h in [0,1]
    /// but large ell_start can sweep it arbitrarily close to the walls.
    std::pair<double, double> h_range(int n_samples = 10000) const;

  private:
    double t0_, t1_, phi0_, dphi0_, phi1_;
    double h_start_, ell_start_, h_target_;
};

ReferenceTrajectory build_reference(double h_start, double ell_start, double h_target, double T0,
                                    double T1);

enum class DecayNorm { Sup, L2 };

/// Data-independent hold duration T2-T1 guaranteeing the requested terminal
/// smallness through the two-sided decay bound: sup |u| <= 1/(t-T1) and
/// ||u||_L2 <= sqrt(7/12)/(t-T1).
double decay_horizon(double delta, DecayNorm norm_kind);

/// Feedback hold control g = -jump; keeps the particle at its position
/// exactly under the semi-implicit particle update.
double hold_control_step(const CoupledState& state);
ControlLaw hold_law();

struct SmoothingResult {
    CoupledState state;   // state at T0
    RunResult run;
    double duration = 0.0; // achieved duration (halved on contact retries)
    int retries = 0;
    double h1_seminorm = 0.0;
};

/// Step 0->T0 with g = 0 (parabolic smoothing of rough data). On contact
/// the duration is halved down to a floor of 1e-4, then the phase fails.
SmoothingResult smoothing_phase(const std::function<double(double)>& u0, double h0, double ell0,
                                double T0_duration, const SimConfig& cfg);

struct TrackingControl {
    ControlSchedule schedule;     // g(t_n) on the synthesis grid, linear interp
    PrescribedSolution prediction; // the precomputed moving-interface solution
};

/// Open-loop tracking control g(t) = m h''(t) - jump(t) evaluated on the
/// prescribed-motion solution started from state_T0.
TrackingControl tracking_control(const CoupledState& state_T0, const ReferenceTrajectory& ref,
                                 const SimConfig& cfg);

struct OleinikReport {
    double max_violation = 0.0;
    double t_at = 0.0;
    double x_at = 0.0;
    size_t samples = 0;
};

/// Scans stored samples with t > T1 (and t - T1 >= t_min) against the
/// two-sided decay bound -(1-x)/(t-T1) <= u <= x/(t-T1).
OleinikReport oleinik_check(const RunResult& result, double T1, double t_min = 0.0);

enum class StrategyPhase { None, Smoothing, Tracking, Hold };

struct StrategyParams {
    double t0_duration = 0.01;
    double tracking_duration = 1.0;
    DecayNorm norm_kind = DecayNorm::Sup;
    bool closed_loop_tracking = false; // recompute the jump from the replayed state
    double slack = 0.1;                // pass iff ||u(T2)|| <= delta*(1+slack)
    double tol_h = 1e-12;
    double tol_ell = 1e-12;
};

struct StrategyReport {
    bool pass = false;
    StrategyPhase failed_phase = StrategyPhase::None;
    std::string message;
    double T0 = 0.0, T1 = 0.0, T2 = 0.0;
    double hold_duration = 0.0;
    double delta = 0.0;
    double h_target = 0.0;
    double smoothing_h1 = 0.0;
    double smoothing_duration = 0.0;
    int smoothing_retries = 0;
    double ref_h_min = 0.0, ref_h_max = 0.0;
    double handoff_err_h = 0.0;   // |h(T1) - h_target| of the replay
    double handoff_err_ell = 0.0; // |ell(T1)| of the replay
    double err_h = 0.0;           // |h(T2) - h_target|
    double err_ell = 0.0;         // |ell(T2)|
    double l2 = 0.0, linf = 0.0;  // terminal fluid norms
};

struct StrategyOutcome {
    StrategyReport report;
    RunResult smoothing;
    RunResult replay;
    RunResult hold;
    ControlSchedule schedule;
    CoupledState terminal;
};

/// Chains smoothing -> reference tracking (open-loop replay) -> feedback
/// hold of duration decay_horizon(delta). The elapsed time depends only on
/// the phase durations and delta, never on the data.
StrategyOutcome run_global_strategy(const std::function<double(double)>& u0, double h0,
                                    double ell0, double h_target, double delta,
                                    const SimConfig& cfg, const StrategyParams& params = {});

} // namespace bpc
