#include "bpc/motion.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace bpc {

PrescribedMotion constant_motion(double h, double t_start, double t_end) {
    PrescribedMotion m;
    m.h = [h](double) { return h; };
    m.hp = [](double) { return 0.0; };
    m.hpp = [](double) { return 0.0; };
    m.t_start = t_start;
    m.t_end = t_end;
    return m;
}

namespace {

// generic Thomas solve, overwrites rhs with the solution
void tridiag(std::vector<double>& low, std::vector<double>& diag, std::vector<double>& up,
             std::vector<double>& rhs) {
    const size_t k = diag.size();
    for (size_t i = 1; i < k; ++i) {
        const double f = low[i] / diag[i - 1];
        diag[i] -= f * up[i - 1];
        rhs[i] -= f * rhs[i - 1];
    }
    rhs[k - 1] /= diag[k - 1];
    for (size_t i = k - 1; i-- > 0;) rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / diag[i];
}

} // namespace

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> v)
    : t_(std::move(t)), v_(std::move(v)) {
    const size_t n = t_.size();
    if (n < 4 || v_.size() != n)
        throw std::invalid_argument("CubicSpline: need >= 4 strictly increasing nodes");
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(t_[i + 1] > t_[i])) throw std::invalid_argument("CubicSpline: nodes not increasing");

    std::vector<double> h(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) h[i] = t_[i + 1] - t_[i];

    // second derivatives M: interior continuity rows 1..n-2; not-a-knot ties
    // M0, M_{n-1} to their neighbours and is substituted into the edge rows.
    const size_t k = n - 2;
    std::vector<double> low(k, 0.0), diag(k, 0.0), up(k, 0.0), rhs(k, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const size_t r = i - 1;
        low[r] = h[i - 1];
        diag[r] = 2.0 * (h[i - 1] + h[i]);
        up[r] = h[i];
        rhs[r] = 6.0 * ((v_[i + 1] - v_[i]) / h[i] - (v_[i] - v_[i - 1]) / h[i - 1]);
    }
    {
        const double a = h[0], b = h[1];
        diag[0] = (a + b) * (a + 2.0 * b) / b;
        up[0] = (b * b - a * a) / b;
        low[0] = 0.0;
    }
    {
        const double a = h[n - 3], b = h[n - 2];
        diag[k - 1] = (a + b) * (2.0 * a + b) / a;
        low[k - 1] = (a * a - b * b) / a;
        up[k - 1] = 0.0;
    }
    tridiag(low, diag, up, rhs);

    std::vector<double> M(n);
    for (size_t i = 1; i + 1 < n; ++i) M[i] = rhs[i - 1];
    M[0] = ((h[0] + h[1]) * M[1] - h[0] * M[2]) / h[1];
    M[n - 1] = ((h[n - 3] + h[n - 2]) * M[n - 2] - h[n - 2] * M[n - 3]) / h[n - 3];

    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        c_[i] = 0.5 * M[i];
        d_[i] = (M[i + 1] - M[i]) / (6.0 * h[i]);
        b_[i] = (v_[i + 1] - v_[i]) / h[i] - h[i] * (2.0 * M[i] + M[i + 1]) / 6.0;
    }
}

size_t CubicSpline::segment(double t) const {
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    size_t i = static_cast<size_t>(std::distance(t_.begin(), it));
    if (i == 0) return 0;
    if (i >= t_.size()) return t_.size() - 2;
    return i - 1;
}

double CubicSpline::value(double t) const {
    const size_t i = segment(t);
    const double s = t - t_[i];
    return v_[i] + s * (b_[i] + s * (c_[i] + s * d_[i]));
}

double CubicSpline::deriv(double t) const {
    const size_t i = segment(t);
    const double s = t - t_[i];
    return b_[i] + s * (2.0 * c_[i] + 3.0 * s * d_[i]);
}

double CubicSpline::deriv2(double t) const {
    const size_t i = segment(t);
    const double s = t - t_[i];
    return 2.0 * c_[i] + 6.0 * s * d_[i];
}

PrescribedMotion spline_motion(std::vector<double> times, std::vector<double> h_samples) {
    const double t0 = times.front();
    const double t1 = times.back();
    auto sp = std::make_shared<CubicSpline>(std::move(times), std::move(h_samples));
    PrescribedMotion m;
    m.h = [sp](double t) { return sp->value(t); };
    m.hp = [sp](double t) { return sp->deriv(t); };
    m.hpp = [sp](double t) { return sp->deriv2(t); };
    m.t_start = t0;
    m.t_end = t1;
    return m;
}

} // namespace bpc
