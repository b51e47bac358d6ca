#pragma once

#include <stdexcept>

namespace bpc {

/// Thrown when a solver produces non-finite values; carries the failing time.
struct NumericalFailure : std::runtime_error {
    double t;
    explicit NumericalFailure(double time)
        : std::runtime_error("numerical failure at t=" + std::to_string(time)), t(time) {}
};

} // namespace bpc
