#pragma once

#include <functional>

namespace nblab {

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Bisects until the local Kronrod
// error estimate is below tol * (panel width / total width) or the depth
// cap is hit; in the latter case `converged` is false.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);

// Fixed (non-adaptive) GK15 on a single panel; err is |K15 - G7|.
QuadResult gk15_panel(const std::function<double(double)>& f, double a, double b);

}  // namespace nblab
