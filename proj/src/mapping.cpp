#include "bpc/mapping.hpp"

namespace bpc {

namespace {
void require_interior(double h, const char* who) {
    if (!(h > 0.0 && h < 1.0))
        throw std::domain_error(std::string(who) + ": h outside (0,1)");
}
} // namespace

double to_reference(double x, double h, Side side) {
    require_interior(h, "to_reference");
    return side == Side::Left ? x / h : (x - h) / (1.0 - h);
}

double to_physical(double y, double h, Side side) {
    require_interior(h, "to_physical");
    return side == Side::Left ? y * h : h + y * (1.0 - h);
}

MappedCoefficients mapped_coefficients(double h, double h_prime, double h_dprime, Side side) {
    require_interior(h, "mapped_coefficients");
    const double H = side == Side::Left ? h : 1.0 - h;
    const double Hp = side == Side::Left ? h_prime : -h_prime;
    const double Hpp = side == Side::Left ? h_dprime : -h_dprime;
    MappedCoefficients c;
    c.conv = 1.0 / H;
    c.diff = c.conv * c.conv;
    c.zeroth = Hp / H;
    c.forcing_slope = Hpp;
    c.drift = -Hp / H;
    return c;
}

} // namespace bpc
