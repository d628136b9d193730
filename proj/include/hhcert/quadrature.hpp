#pragma once

#include <cstdint>
#include <functional>

namespace hhcert::quadrature {

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;  // sum of per-panel Richardson estimates
    std::int64_t evaluations = 0;     // integrand calls, always >= 3
    bool converged = false;
};

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kDefaultAbsTol = 1e-12;
inline constexpr int kDefaultMaxDepth = 40;

// Adaptive Simpson integration of g over [lo, hi] with Richardson
// extrapolation of each accepted panel (fifth-order local rule).
// Exceeding max_depth is not an error: the best estimate is returned
// with converged=false. Exceptions thrown by g propagate unchanged.
QuadResult integrate(const std::function<double(double)>& g,
                     double lo, double hi,
                     double rel_tol = kDefaultRelTol,
                     double abs_tol = kDefaultAbsTol,
                     int max_depth = kDefaultMaxDepth);

}  // namespace hhcert::quadrature
