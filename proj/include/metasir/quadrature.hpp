#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace metasir::quad {

struct QuadResult
{
    double value = 0.0;
    /// Sum over subintervals of |K15 - G7|.
    double error = 0.0;
    std::size_t intervals = 0;
    bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over the
/// panels delimited by `breakpoints` (ascending, at least two). The panel
/// with the largest error estimate is bisected until the summed estimate
/// drops below abs_tol or max_intervals is reached.
QuadResult gauss_kronrod(const std::function<double(double)>& f, std::span<const double> breakpoints,
                         double abs_tol, std::size_t max_intervals = 200000);

} // namespace metasir::quad
