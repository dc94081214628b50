#pragma once

// The weighted sequence
//     a_n = sum_{l^2 - l m + m^2 = n} gamma(2l - m) = sum_{r^2 + 3 s^2 = 4n} gamma(r),
// gamma(r) = log r for primes r > 2, its congruence sums A_d, the main terms
// M_d, remainders r_d = A_d - M_d, the bilinear remainder T, the singular
// series H and the head-line sum S(x) = sum_{n <= x} a_n Lambda(n).

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "eisenstein/numtheory.hpp"

namespace eis {

inline constexpr u64 kMaxTableX = 100'000'000;

/// Normalisation of the main term, fixed by calibrate_kappa (the lattice
/// count of odd s in |s| <= L is L, not L/2).
inline constexpr double kKappa = 2.0;

/// How the main term treats moduli divisible by 3.
///
/// uniform:   M_d = kappa rho(4d)/(4d) * P(y) for every d, so g(3) = 1/3.
/// corrected: M_d = 0 when 3 | d. A trace 2l - m divisible by 3 is prime only
///            when it equals 3, so A_3(x) = O(sqrt(x)) and the true local
///            density at 3 is 0; this multiplies H by 3/2.
enum class ThreeAdicConvention { uniform, corrected };

const char* to_string(ThreeAdicConvention c);

/// log l for primes l > 2, otherwise 0.
double gamma_weight(i64 l);

struct SieveTable {
    u64 x = 0;
    std::vector<double> a;                        // a[n], n <= x
    std::vector<std::uint32_t> prime_power_base;  // p when n = p^k, else 0
    std::vector<std::int8_t> mu;
    std::vector<std::uint32_t> primes;            // odd and even primes <= 2 sqrt(x)

    double lambda(u64 n) const;
};

/// Builds a_n, Lambda and mu up to x. Throws capacity_error above kMaxTableX
/// or when allocation fails.
SieveTable build_table(u64 x);

/// Sum of a_n over n <= y with d | n. y must not exceed table.x.
double A_d(const SieveTable& table, double y, u64 d);

/// P(y) = sum_{odd primes r <= sqrt(4y)} log r * sqrt((4y - r^2)/3).
double main_term_weight(double y);

/// kappa * rho(4d)/(4d), or 0 under the corrected convention when 3 | d.
double main_term_density(u64 d, double kappa = kKappa,
                         ThreeAdicConvention conv = ThreeAdicConvention::corrected);

double M_d(double y, u64 d, double kappa = kKappa,
           ThreeAdicConvention conv = ThreeAdicConvention::corrected);

struct KappaCalibration {
    std::array<double, 4> candidates{0.5, 1.0, 2.0, 4.0};
    std::array<double, 4> residuals{};  // |r_1(x)| / A(x) per candidate
    double chosen = 0.0;
};

KappaCalibration calibrate_kappa(const SieveTable& table, u64 x);

struct RemainderRow {
    u64 d;
    double A_d, M_d, r_d;
};

struct RemainderReport {
    u64 x = 0, D = 0;
    double kappa = kKappa;
    ThreeAdicConvention convention = ThreeAdicConvention::corrected;
    std::vector<RemainderRow> rows;  // at y = x
    std::vector<double> y_grid;      // x^{j/G}, j < G, then x
    std::vector<double> abs_sums;    // sum_{d <= D} |r_d(y)| per grid point
    double R = 0.0;                  // max over the grid
    double y_at_sup = 0.0;
    double ratio = 0.0;              // R / (D^{1/4} x^{3/4})
};

RemainderReport remainder_R(const SieveTable& table, u64 x, u64 D, std::size_t grid = 32,
                            ThreeAdicConvention conv = ThreeAdicConvention::corrected);

/// Admissible z-window (x/D, x^2/D^2]; nullopt when it is empty (D >= x).
std::optional<std::pair<double, double>> t_window(u64 x, u64 D);

/// sum_{l <= D} | sum_{m > z, l m <= x} a_{lm} mu(m) |. Throws
/// empty_range_error for an empty window and std::invalid_argument for z
/// outside it.
double T_sum(const SieveTable& table, u64 x, u64 D, double z);

struct TScan {
    std::vector<double> z_grid;
    std::vector<double> values;
    double value = 0.0;  // max over the grid
    double z_at_max = 0.0;
};

/// Max of T_sum over a geometric grid z_j = lo (hi/lo)^{j/G}, j = 1..G.
TScan T_scan(const SieveTable& table, u64 x, u64 D, std::size_t grid = 16);

int chi3(u64 p);

/// g(p) = M_p / A under the given convention: g(2) = 0, g(3) = 1/3 or 0,
/// g(p) = rho(p)/p otherwise.
double local_density(u64 p, ThreeAdicConvention conv = ThreeAdicConvention::corrected);

struct SingularSeries {
    u64 p_max = 0;
    ThreeAdicConvention convention = ThreeAdicConvention::corrected;
    double H = 0.0;           // c * prod_{5 <= p <= p_max} (1 - chi(p)/(p-1)), c = 2 or 3
    double H_raw = 0.0;       // prod_{p <= p_max} (1 - g(p)) (1 - 1/p)^{-1}
    double limit = 0.0;       // L(1, chi)-accelerated estimate of the full product
    double tail_bound = 0.0;  // |limit - H|
};

/// Throws std::domain_error when p_max < 5.
SingularSeries singular_series_H(u64 p_max, ThreeAdicConvention conv = ThreeAdicConvention::corrected);

struct TheoremSum {
    u64 x = 0;
    double A = 0.0;
    double S = 0.0;
    double H = 0.0;
    double ratio = 0.0;
};

TheoremSum theorem_sum(const SieveTable& table, u64 x, double H);

/// One pass over the table producing a TheoremSum for every cutoff in xs.
std::vector<TheoremSum> theorem_convergence(const SieveTable& table, std::vector<u64> xs, double H);

struct PrimePowerDiscrepancy {
    double direct = 0.0;  // sum Lambda(2l - m) Lambda(l^2 - l m + m^2)
    double S = 0.0;       // sum a_n Lambda(n)
    double difference = 0.0;
};

PrimePowerDiscrepancy prime_power_discrepancy(const SieveTable& table, u64 x);

}  // namespace eis
