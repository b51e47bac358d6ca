#pragma once

#include "bpc/types.hpp"

namespace bpc {

/// Physical coordinate -> reference coordinate y in [0,1] of the given side.
/// Left: y = x/h (wall at y=0, interface at y=1).
/// Right: y = (x-h)/(1-h) (interface at y=0, wall at y=1).
double to_reference(double x, double h, Side side);

/// Inverse of to_reference.
double to_physical(double y, double h, Side side);

/// Coefficients of the mapped one-sided equation, expressed in the side's
/// wall-anchored frame (coordinate measured from the side's own wall, width
/// H = h on the left, H = 1-h on the right, interface speed H').
///
///   dt W - diff Wyy + conv W Wy + drift y Wy            = s   (direct form)
///   dt V - diff Vyy + conv V Vy + zeroth V + fslope y   = s   (lifted form)
struct MappedCoefficients {
    double diff = 0.0;          // 1/H^2
    double conv = 0.0;          // 1/H
    double zeroth = 0.0;        // H'/H
    double forcing_slope = 0.0; // H''
    double drift = 0.0;         // -H'/H, applied as drift*y on the Wy term
};

/// h, h_prime, h_dprime are the particle data; the wall-frame (H, H', H'')
/// of the requested side is derived internally.
MappedCoefficients mapped_coefficients(double h, double h_prime, double h_dprime, Side side);

} // namespace bpc
