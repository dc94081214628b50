#pragma once

// Bilinear (Type II) sums over rational and Z[w] indices, the pair
// discriminant Delta, and pair-correlation sums S(m1, m2).
//
// Delta convention: delta_pair returns the integer b1 a2 - a1 b2 for
// m_i = a_i + b_i w. With n the summation variable and l_i = tr(n m_i),
//     l1 m2 - l2 m1 = -(1 + 2w) Delta conj(n),
// so l1 m2 = l2 m1 componentwise mod |Delta|, and
//     3 Delta^2 N < N(l1 m2 - l2 m1) <= 3 Delta^2 N'  iff  N < N(n) <= N'.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "eisenstein/eisenstein_int.hpp"
#include "eisenstein/sieve_sums.hpp"

namespace eis {

class degenerate_pair_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Every element of Z[w] with norm <= n_max, grouped by norm.
class NormIndex {
public:
    explicit NormIndex(u64 n_max);
    u64 n_max() const { return n_max_; }
    std::span<const EisensteinInt> of_norm(u64 n) const;
    /// Elements with lo < norm <= hi.
    std::span<const EisensteinInt> in_range(u64 lo, u64 hi) const;

private:
    u64 n_max_;
    std::vector<std::size_t> offset_;
    std::vector<EisensteinInt> elems_;
};

/// gamma_l for l <= limit by table, falling back to primality tests above.
class GammaTable {
public:
    explicit GammaTable(u64 limit);
    double operator()(i64 l) const;

private:
    std::vector<double> g_;
};

i64 delta_pair(const EisensteinInt& m1, const EisensteinInt& m2);

/// #{a in (Z/|Delta|)^x : m1 - a m2 in |Delta| Z[w]}. Throws
/// degenerate_pair_error when delta == 0.
u64 eta(const EisensteinInt& m1, const EisensteinInt& m2, i64 delta);

struct PairSum {
    double value = 0.0;
    u64 contributing = 0;      // n with both gammas nonzero
    u64 congruence_fail = 0;   // of those, failing l1 m2 = l2 m1 (mod |Delta|)
    u64 window_fail = 0;       // failing the 3 Delta^2 norm window
};

/// sum_{N < N(n) <= N'} gamma(n m1) gamma(n m2) by direct enumeration over
/// idx (which must reach N'). For Delta != 0 every contributing n is
/// checked against the congruence and the norm window.
PairSum s_pair(const EisensteinInt& m1, const EisensteinInt& m2, u64 N, u64 Np, const NormIndex& idx,
               const GammaTable& gamma);

/// The same sum enumerated over prime pairs (l1, l2) instead: keep pairs
/// passing the congruence, the window and divisibility by (1 + 2w) Delta,
/// and recover n from them. Throws degenerate_pair_error when Delta = 0.
double s_pair_filtered(const EisensteinInt& m1, const EisensteinInt& m2, u64 N, u64 Np, const GammaTable& gamma);

struct DegenerateCount {
    u64 elements = 0;
    u64 by_delta = 0;      // ordered pairs with Delta = 0
    u64 by_direction = 0;  // sum over primitive directions (up to sign) of count^2
};

/// Pairs (m1, m2) with M < N(m_i) <= M'.
DegenerateCount degenerate_pairs(u64 M, u64 Mp, const NormIndex& idx);

struct IdentityCheck {
    u64 pairs = 0;  // coprime (m, n) with mn <= limit and elements of both norms
    double max_residual = 0.0;  // max |6 a_{mn} - sum sum gamma(m n)|
};

/// 6 a_{mn} against the double sum over elements of norms m and n.
IdentityCheck factorization_identity(const SieveTable& table, u64 limit);

struct BilinearOptions {
    bool eisenstein = true;                  // B2, B3 and the Z[w] form of B1
    u64 pair_budget = 200'000'000;           // cap on pairs * n-elements for B3 via S_pair
    u64 histogram_budget = 10'000'000;       // cap on m-pairs for the Delta histogram
};

struct BilinearReport {
    u64 M = 0, N = 0, Mp = 0, Np = 0;
    double b1 = 0.0;           // sum_{N <= n <= N'} |sum_{M < m <= M'} a_{mn} mu(m)|
    double b1_coprime = 0.0;   // N < n <= N', (m, n) = 1
    double b1_coprime_eis = 0.0;  // same, with a_{mn} expanded over Z[w]
    double b2 = 0.0;
    double b3 = 0.0;
    std::optional<double> b3_pairs;  // sum mu mu S(m1, m2), when within budget
    std::optional<u64> degenerate;   // ordered m-pairs with Delta = 0
    std::map<i64, u64> delta_histogram;
    double b1_over_MN = 0.0;
};

/// Requires M' N' <= table.x (capacity_error otherwise) and M < M', N < N'.
BilinearReport bilinear_B(u64 M, u64 N, u64 Mp, u64 Np, const SieveTable& table, const BilinearOptions& opt = {});

struct DecayRow {
    u64 N = 0, M = 0;
    double b1_over_MN = 0.0;
};

/// B1(M, N)/(MN) with M = round(N^delta), M' = 2M, N' = 2N.
std::vector<DecayRow> bilinear_decay(double delta, const std::vector<u64>& Ns, const SieveTable& table);

/// Raw class sums sum_{l1 = a l2 (mod q), |l1 - alpha l2| <= y} gamma_l1 gamma_l2
/// over l1, l2 <= x, for a = 0..q-1; entry q holds the unrestricted sum.
std::vector<double> pair_class_sums(u64 q, u64 x, std::complex<double> alpha, double y);

struct PairEquidistribution {
    u64 q = 0, x = 0;
    double y_frac = 0.0;
    std::vector<std::complex<double>> alphas;
    std::vector<double> per_alpha;  // max_a |raw_a - total/phi(q)| / x^2
    double max_discrepancy = 0.0;
};

/// y = y_frac * x over the sample alpha in {1, 1/2, 2, (1+i)/2, e^{i pi/3}}.
PairEquidistribution pair_equidistribution(u64 q, u64 x, double y_frac = 0.25);

}  // namespace eis
