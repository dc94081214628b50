#pragma once

// Rational-integer helpers shared by every module: checked 64-bit products,
// modular arithmetic on u64 via 128-bit intermediates, deterministic
// Miller-Rabin, Pollard-Brent factorisation, Tonelli-Shanks, and a
// compensated accumulator.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eis {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

/// Thrown when a requested size exceeds what the tables are built for.
class capacity_error : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Thrown when a search has no answer (e.g. a representation that does not exist).
class not_found_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an interval that a computation ranges over is empty.
class empty_range_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Throws std::overflow_error instead of wrapping.
i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 narrow_checked(i128 v);

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}
u64 powmod(u64 base, u64 exp, u64 m);

/// Least non-negative residue of v modulo m (m > 0).
inline u64 mod_floor(i64 v, u64 m) {
    i128 r = static_cast<i128>(v) % static_cast<i128>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

u64 gcd_u64(u64 a, u64 b);
i64 gcd_i64(i64 a, i64 b);

/// Inverse of a modulo m, if gcd(a, m) = 1. m = 1 yields 0.
std::optional<u64> inverse_mod(u64 a, u64 m);

bool is_prime_u64(u64 n);

/// Prime factorisation, ascending primes with multiplicities. factor_u64(1) is empty.
std::vector<std::pair<u64, int>> factor_u64(u64 n);

/// Square root of a modulo an odd prime p, or nullopt if a is a non-residue.
/// The least quadratic non-residue is found by a deterministic scan.
std::optional<u64> sqrt_mod_prime(u64 a, u64 p);

/// Exact floor(sqrt(n)).
u64 isqrt(u64 n);

/// Primes <= n by a plain Eratosthenes sieve.
std::vector<std::uint32_t> primes_up_to(u64 n);

/// Euler phi via factorisation.
u64 euler_phi(u64 n);

/// Neumaier-compensated summation.
class KahanSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    KahanSum& operator+=(double v) {
        add(v);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace eis
