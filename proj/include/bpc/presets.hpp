#pragma once

#include <cstdint>
#include <functional>

#include "bpc/types.hpp"

namespace bpc {

using InitialField = std::function<double(double)>;

InitialField preset_zero();
InitialField preset_sine(int k, double amplitude);
InitialField preset_step(double amplitude);
InitialField preset_random_fourier(uint32_t seed, double amplitude, int modes);

/// Linear interpolation of tabulated (x, u) samples; x must be increasing.
InitialField field_from_samples(std::vector<double> x, std::vector<double> u);

/// L2 initial data projected onto the two mapped grids; the interface sample
/// is overwritten by ell0 and the walls by zero.
CoupledState make_initial_state(const InitialField& u0, double h0, double ell0, int n_left,
                                int n_right);

} // namespace bpc
