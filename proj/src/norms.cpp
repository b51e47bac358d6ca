#include "bpc/norms.hpp"

#include <algorithm>
#include <cmath>

#include "bpc/mapping.hpp"

namespace bpc {

namespace {

double side_width(const CoupledState& s, Side side) {
    return side == Side::Left ? s.particle.h : 1.0 - s.particle.h;
}

} // namespace

Norms discrete_norms(const CoupledState& state) {
    state.require_valid("discrete_norms");
    Norms out;
    double l2sq = 0.0;
    for (const SideField* f : {&state.left, &state.right}) {
        const double H = side_width(state, f->side);
        const double dy = f->dy();
        const auto& v = f->values;
        double q = 0.5 * (v.front() * v.front() + v.back() * v.back());
        for (int i = 1; i <= f->n; ++i) q += v[i] * v[i];
        l2sq += H * dy * q;
        double grad = 0.0;
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            const double d = (v[i + 1] - v[i]) / dy;
            grad += d * d;
        }
        out.h1 += grad * dy / H; // one chain-rule factor cancels against the Jacobian
        for (double x : v) out.linf = std::max(out.linf, std::abs(x));
    }
    out.l2 = std::sqrt(l2sq);
    out.h1 = std::sqrt(out.h1);
    return out;
}

double sample_physical(const CoupledState& state, double x) {
    const double h = state.particle.h;
    const Side side = x < h ? Side::Left : Side::Right;
    const SideField& f = side == Side::Left ? state.left : state.right;
    const double y = std::clamp(to_reference(x, h, side), 0.0, 1.0);
    const double pos = y * (f.n + 1);
    const int i = std::min(static_cast<int>(pos), f.n);
    const double w = pos - i;
    return (1.0 - w) * f.values[i] + w * f.values[i + 1];
}

std::vector<std::pair<double, double>> reconstruct_physical(const CoupledState& state, int n_out) {
    state.require_valid("reconstruct_physical");
    if (n_out < 2) throw std::invalid_argument("reconstruct_physical: n_out < 2");
    const double h = state.particle.h;
    std::vector<double> xs;
    xs.reserve(static_cast<size_t>(n_out) + 1);
    for (int i = 0; i < n_out; ++i) xs.push_back(static_cast<double>(i) / (n_out - 1));
    xs.push_back(h);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    for (double x : xs) {
        double u;
        if (x == h)
            u = state.particle.ell;
        else if (x <= 0.0)
            u = 0.0;
        else if (x >= 1.0)
            u = 0.0;
        else
            u = sample_physical(state, x);
        out.emplace_back(x, u);
    }
    return out;
}

} // namespace bpc
