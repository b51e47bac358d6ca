#pragma once

#include <functional>
#include <vector>

namespace bpc {

/// Prescribed particle motion: evaluators for (h, h', h'') on [t_start, t_end].
/// h must stay in (0,1) on the whole interval and be H2-regular; analytic
/// trajectories and spline-interpolated tabulated motions both qualify.
struct PrescribedMotion {
    std::function<double(double)> h;
    std::function<double(double)> hp;
    std::function<double(double)> hpp;
    double t_start = 0.0;
    double t_end = 0.0;

    bool covers(double t0, double t1) const { return t0 >= t_start - 1e-12 && t1 <= t_end + 1e-12; }
};

PrescribedMotion constant_motion(double h, double t_start, double t_end);

/// Natural cubic-spline machinery with not-a-knot end conditions; h'' comes
/// from the spline's second derivative, preserving H2 regularity of the
/// tabulated motion.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> t, std::vector<double> v);

    double value(double t) const;
    double deriv(double t) const;
    double deriv2(double t) const;

  private:
    size_t segment(double t) const;
    std::vector<double> t_, v_, b_, c_, d_; // v + b dt + c dt^2 + d dt^3
};

PrescribedMotion spline_motion(std::vector<double> times, std::vector<double> h_samples);

} // namespace bpc
