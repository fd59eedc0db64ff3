#pragma once

#include <functional>

namespace coaxflux {

struct QuadratureResult {
    double value;
    double error_estimate;
    long evaluations;
};

/// Adaptive Simpson integration of a smooth integrand on [a, b].
/// Subdivides until the Richardson error estimate of each panel meets
/// max(abs_tol_local, rel_tol * |panel|); throws NumericError when the
/// recursion depth limit is hit before convergence.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol = 1e-10,
                                    double rel_tol = 1e-9,
                                    int max_depth = 48);

} // namespace coaxflux
