#pragma once

// Poisson summation check for the smoothed congruence sums
//     A_d(f) = sum_{d | n} a_n f(n)
//            = sum_r gamma_r sum_{s : 4d | r^2 + 3 s^2} f((r^2 + 3 s^2)/4)
//            = 1/(4d) sum_r gamma_r sum_k c_r(k) F_r(k/(4d)),
// with F_r(v) = int f((r^2 + 3 t^2)/4) cos(2 pi v t) dt over R and
// c_r(k) = sum of e(k c/(4d)) over the classes c mod 4d with
// r^2 + 3 c^2 = 0 (mod 4d). For (r, 4d) = 1 these classes are r / v for the
// roots v of v^2 + 3 = 0 (mod 4d).

#include <vector>

#include "eisenstein/numtheory.hpp"
#include "eisenstein/smooth_window.hpp"

namespace eis {

struct FourierValue {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

/// F_r(v). Requires r^2 <= 4x (std::invalid_argument otherwise). The
/// default tolerance is 1e-10 sqrt(x) absolute.
FourierValue fourier_F(u64 r, double v, const SmoothWindow& w, double abs_tol = -1.0);

/// Residues c mod 4d with r^2 + 3 c^2 = 0 (mod 4d), ascending.
std::vector<u64> poisson_classes(u64 r, u64 d);

struct PoissonReport {
    u64 d = 0;
    double x = 0.0, y = 0.0;
    double lhs = 0.0;       // direct lattice sum
    double rhs = 0.0;       // truncated frequency sum
    double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|), 0 when both vanish
    u64 K = 0;              // last frequency used
    bool converged = true;  // K-sum stabilised and every quadrature met its tolerance
    double quad_error = 0.0;
};

/// Escalates K by doubling from K_start until the newest block of
/// frequencies changes the sum by less than 1e-2 * target relative.
PoissonReport poisson_residual(u64 d, const SmoothWindow& w, double target = 1e-6, u64 K_start = 32,
                               u64 K_max = 1u << 16);

}  // namespace eis
