#pragma once

// Large-sieve sums over the points v/d, v^2 + 3 = 0 (mod d):
//   l2: sum_{D < d <= 2D, d odd} sum_v |S(v/d)|^2 / ((D + N) |alpha|^2)
//   l1:     sum_{D < d <= 2D, d odd} sum_v |S(v/d)|  / (D^{1/2} (D + N)^{1/2} |alpha|)
//   rho_h:  sum_{d <= D} |sum_h alpha_h rho_h(d)|    / (D^{1/2} (D + N)^{1/2} |alpha|)
// with S(theta) = sum_{n <= N} alpha_n e(n theta) and |alpha| the l2 norm.

#include <complex>
#include <cstdint>
#include <vector>

#include "eisenstein/numtheory.hpp"

namespace eis {

struct LargeSieveForms {
    double l2 = 0.0;
    double l1 = 0.0;
    double rho_h = 0.0;
};

/// alpha[i] is the coefficient of n = i + 1. Empty or zero alpha gives zeros.
LargeSieveForms large_sieve_forms(u64 D, const std::vector<std::complex<double>>& alpha);

/// Evaluates all trial vectors in one sweep over d (twiddles shared).
std::vector<LargeSieveForms> large_sieve_forms_batch(u64 D, const std::vector<std::vector<std::complex<double>>>& alphas);

/// N unit-variance complex Gaussians from std::mt19937_64 seeded with `seed`.
std::vector<std::complex<double>> random_coefficients(u64 N, std::uint64_t seed);

struct LargeSieveReport {
    u64 D = 0, N = 0, trials = 0;
    std::uint64_t seed = 0;
    LargeSieveForms max;  // componentwise max over trials
};

/// Trial t uses seed + t. trials must be >= 1 (std::invalid_argument).
LargeSieveReport large_sieve_ratio(u64 D, u64 N, u64 trials, std::uint64_t seed);

}  // namespace eis
