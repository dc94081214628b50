#pragma once

#include <functional>

namespace eis {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

/// Adaptive bisection on top of Boost's 15-point Gauss-Kronrod rule with an
/// absolute tolerance (Boost's own driver stops on a relative test, which
/// never triggers on oscillatory panels whose integral is near zero).
QuadResult integrate_gk15(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          int max_depth = 30);

/// Integrates f(t) cos(2 pi v t) over [a, b], cutting the interval into
/// half-periods first so each panel sees at most one sign change.
QuadResult integrate_cosine(const std::function<double(double)>& f, double v, double a, double b,
                            double abs_tol);

}  // namespace eis
