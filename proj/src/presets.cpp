#include "bpc/presets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bpc/mapping.hpp"

namespace bpc {

InitialField preset_zero() {
    return [](double) { return 0.0; };
}

InitialField preset_sine(int k, double amplitude) {
    if (k < 1) throw std::invalid_argument("preset_sine: k must be >= 1");
    const double w = k * M_PI;
    return [w, amplitude](double x) { return amplitude * std::sin(w * x); };
}

InitialField preset_step(double amplitude) {
    return [amplitude](double x) {
        if (x < 0.5) return amplitude;
        if (x > 0.5) return -amplitude;
        return 0.0;
    };
}

InitialField preset_random_fourier(uint32_t seed, double amplitude, int modes) {
    if (modes < 1) throw std::invalid_argument("preset_random_fourier: modes must be >= 1");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> c(static_cast<size_t>(modes));
    for (int k = 0; k < modes; ++k) c[k] = uni(rng) / (k + 1);
    auto raw = [c](double x) {
        double v = 0.0;
        for (size_t k = 0; k < c.size(); ++k) v += c[k] * std::sin((k + 1) * M_PI * x);
        return v;
    };
    double sup = 0.0;
    for (int i = 0; i <= 2048; ++i) sup = std::max(sup, std::abs(raw(i / 2048.0)));
    const double scale = sup > 0.0 ? amplitude / sup : 0.0;
    return [raw, scale](double x) { return scale * raw(x); };
}

InitialField field_from_samples(std::vector<double> x, std::vector<double> u) {
    if (x.size() != u.size() || x.size() < 2)
        throw std::invalid_argument("field_from_samples: need >= 2 matching samples");
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i + 1] > x[i])) throw std::invalid_argument("field_from_samples: x not increasing");
    return [x = std::move(x), u = std::move(u)](double q) {
        if (q <= x.front()) return u.front();
        if (q >= x.back()) return u.back();
        const auto it = std::upper_bound(x.begin(), x.end(), q);
        const size_t i = static_cast<size_t>(std::distance(x.begin(), it)) - 1;
        const double w = (q - x[i]) / (x[i + 1] - x[i]);
        return (1.0 - w) * u[i] + w * u[i + 1];
    };
}

CoupledState make_initial_state(const InitialField& u0, double h0, double ell0, int n_left,
                                int n_right) {
    if (!(h0 > 0.0 && h0 < 1.0))
        throw std::invalid_argument("make_initial_state: h0 outside (0,1)");
    CoupledState s(0.0, n_left, n_right, {h0, ell0});
    for (int i = 1; i <= n_left; ++i)
        s.left.values[i] = u0(to_physical(i * s.left.dy(), h0, Side::Left));
    for (int i = 1; i <= n_right; ++i)
        s.right.values[i] = u0(to_physical(i * s.right.dy(), h0, Side::Right));
    s.left.values[0] = 0.0;
    s.right.values[n_right + 1] = 0.0;
    s.left.values[n_left + 1] = ell0;
    s.right.values[0] = ell0;
    return s;
}

} // namespace bpc
