#pragma once

// Exact arithmetic in Z[w], w = exp(2 pi i / 3), w^2 + w + 1 = 0.
//
// An element a + b w has
//   Re = a - b/2,   Im = b sqrt(3)/2,
//   norm  = a^2 - a b + b^2,
//   trace = z + conj(z) = 2a - b,
//   conj(a + b w) = (a - b) - b w.
//
// Coefficients are 64-bit; every product is checked and throws
// std::overflow_error rather than wrapping. Norms up to ~1e18 are exact.

#include <array>
#include <compare>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "eisenstein/numtheory.hpp"

namespace eis {

struct EisensteinInt {
    i64 a = 0;  // coefficient of 1
    i64 b = 0;  // coefficient of w

    constexpr EisensteinInt() = default;
    constexpr EisensteinInt(i64 a_, i64 b_ = 0) : a(a_), b(b_) {}

    static constexpr EisensteinInt omega() { return {0, 1}; }

    bool is_zero() const { return a == 0 && b == 0; }

    friend constexpr bool operator==(const EisensteinInt&, const EisensteinInt&) = default;
    friend constexpr auto operator<=>(const EisensteinInt&, const EisensteinInt&) = default;
};

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x);
EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y);
inline EisensteinInt& operator+=(EisensteinInt& x, const EisensteinInt& y) { return x = x + y; }
inline EisensteinInt& operator-=(EisensteinInt& x, const EisensteinInt& y) { return x = x - y; }
inline EisensteinInt& operator*=(EisensteinInt& x, const EisensteinInt& y) { return x = x * y; }

std::ostream& operator<<(std::ostream& os, const EisensteinInt& z);
std::string to_string(const EisensteinInt& z);

EisensteinInt conj(const EisensteinInt& z);
i64 norm(const EisensteinInt& z);
i64 trace(const EisensteinInt& z);

/// The six units, in the order 1, -w^2 = 1 + w, w, -1, w^2 = -1 - w, -w
/// (successive multiplication by 1 + w, a primitive sixth root of unity).
const std::array<EisensteinInt, 6>& units();
bool is_unit(const EisensteinInt& z);

/// All six associates u z, in the order of units().
std::array<EisensteinInt, 6> associates(const EisensteinInt& z);

/// The sector predicate a > b >= 0 that selects one associate per class.
bool is_canonical(const EisensteinInt& z);

/// Unique associate with a > b >= 0. Throws std::domain_error on zero.
EisensteinInt canonical_associate(const EisensteinInt& z);

/// q, r with n = q d + r and norm(r) < norm(d). q rounds both rational
/// coordinates of n/d to nearest, ties toward zero.
std::pair<EisensteinInt, EisensteinInt> divrem(const EisensteinInt& n, const EisensteinInt& d);

bool divides(const EisensteinInt& d, const EisensteinInt& n);

/// n / d; throws std::domain_error if the division is not exact.
EisensteinInt exact_div(const EisensteinInt& n, const EisensteinInt& d);

/// Canonical generator of the ideal (x, y). Throws if both are zero.
EisensteinInt gcd(const EisensteinInt& x, const EisensteinInt& y);

struct EisFactorization {
    EisensteinInt unit{1, 0};
    std::vector<std::pair<EisensteinInt, int>> factors;  // canonical primes, sorted by (norm, a, b)

    EisensteinInt product() const;
};

EisFactorization factor(const EisensteinInt& z);

bool is_prime(const EisensteinInt& z);

/// Moebius function on associate classes: 0 if a square prime divides z,
/// otherwise (-1)^(number of prime factors). Units give 1.
int mobius_eis(const EisensteinInt& z);

}  // namespace eis
