#include "bpc/scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace bpc {

void thomas_constant(std::vector<double>& r, double a, std::vector<double>& cp) {
    const size_t k = r.size();
    if (k == 0) return;
    cp.resize(k);
    const double b = 1.0 + 2.0 * a;
    cp[0] = -a / b;
    r[0] = r[0] / b;
    for (size_t i = 1; i < k; ++i) {
        const double denom = b + a * cp[i - 1];
        cp[i] = -a / denom;
        r[i] = (r[i] + a * r[i - 1]) / denom;
    }
    for (size_t i = k - 1; i-- > 0;) r[i] -= cp[i] * r[i + 1];
}

double side_cfl_speed(const std::vector<double>& w, double H, double Hp) {
    double wmax = 0.0;
    for (double v : w) wmax = std::max(wmax, std::abs(v));
    return (wmax + std::abs(Hp)) / H;
}

void side_step_canonical(std::vector<double>& w, double dy, double H_old, double H_new,
                         double Hp_old, double Hp_new, double Hpp_old, double t, double dt,
                         const SideStepOptions& opt, SideWorkspace& ws) {
    if (!(H_old > 0.0 && H_old < 1.0) || !(H_new > 0.0 && H_new < 1.0))
        throw std::domain_error("side_step_canonical: subdomain width outside (0,1)");
    const int n = static_cast<int>(w.size()) - 2;
    const double inv2dy = 1.0 / (2.0 * dy);

    const MappedCoefficients co = mapped_coefficients(H_old, Hp_old, Hpp_old, Side::Left);

    std::vector<double>* field = &w;
    if (opt.lifted) {
        // V = W - Hp*y, homogeneous boundaries
        ws.lift.resize(w.size());
        for (size_t i = 0; i < w.size(); ++i) ws.lift[i] = w[i] - Hp_old * (i * dy);
        field = &ws.lift;
    }
    const std::vector<double>& f = *field;

    ws.rhs.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double d1 = (f[i + 1] - f[i - 1]) * inv2dy;
        double rhs = 0.0;
        if (opt.convection) {
            const double d1sq = (f[i + 1] * f[i + 1] - f[i - 1] * f[i - 1]) * inv2dy;
            rhs -= co.conv * (0.5 * f[i] * d1 + 0.25 * d1sq);
        }
        const double y = i * dy;
        if (opt.lifted) {
            rhs -= co.zeroth * f[i] + co.forcing_slope * y;
        } else {
            rhs -= co.drift * y * d1;
        }
        if (opt.source) rhs += (*opt.source)(t, y);
        ws.rhs[i - 1] = f[i] + dt * rhs;
    }

    const double diff_new = 1.0 / (H_new * H_new);
    const double a = dt * diff_new / (dy * dy);
    if (!opt.lifted) ws.rhs[n - 1] += a * Hp_new; // interface Dirichlet value folded in
    thomas_constant(ws.rhs, a, ws.cp);

    if (opt.lifted) {
        for (int i = 1; i <= n; ++i) w[i] = ws.rhs[i - 1] + Hp_new * (i * dy);
    } else {
        for (int i = 1; i <= n; ++i) w[i] = ws.rhs[i - 1];
    }
    w[0] = 0.0;
    w[n + 1] = Hp_new;
}

std::vector<double> lift(const std::vector<double>& u, double h, double h_prime, Side side) {
    if (!(h > 0.0 && h < 1.0)) throw std::domain_error("lift: h outside (0,1)");
    const int n = static_cast<int>(u.size()) - 2;
    if (n < 1) throw std::invalid_argument("lift: too few samples");
    const double iface = side == Side::Left ? u.back() : u.front();
    const double scale = std::max({1.0, std::abs(h_prime), std::abs(iface)});
    if (std::abs(iface - h_prime) > 1e-12 * scale)
        throw std::invalid_argument("lift: interface sample does not match h_prime");
    const double dy = 1.0 / (n + 1);
    std::vector<double> v(u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        const double y = static_cast<double>(i) * dy;
        const double shape = side == Side::Left ? y : 1.0 - y;
        v[i] = u[i] - h_prime * shape;
    }
    // the ends vanish by construction; pin them to avoid stray rounding
    if (side == Side::Left) {
        v.back() = 0.0;
    } else {
        v.front() = 0.0;
    }
    return v;
}

std::vector<double> canonical_from_side(const SideField& f) {
    if (f.side == Side::Left) return f.values;
    std::vector<double> w(f.values.size());
    const size_t last = f.values.size() - 1;
    for (size_t i = 0; i < f.values.size(); ++i) w[i] = -f.values[last - i];
    return w;
}

void side_from_canonical(const std::vector<double>& w, SideField& f) {
    if (f.side == Side::Left) {
        f.values = w;
        return;
    }
    const size_t last = w.size() - 1;
    f.values.resize(w.size());
    for (size_t i = 0; i < w.size(); ++i) f.values[i] = -w[last - i];
}

} // namespace bpc
