#include "eisenstein/eisenstein_int.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace eis {

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) {
    return {checked_add(x.a, y.a), checked_add(x.b, y.b)};
}

EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) {
    return {checked_sub(x.a, y.a), checked_sub(x.b, y.b)};
}

EisensteinInt operator-(const EisensteinInt& x) { return EisensteinInt{} - x; }

// (a1 + b1 w)(a2 + b2 w) = (a1 a2 - b1 b2) + (a1 b2 + a2 b1 - b1 b2) w
EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
    i128 bb = static_cast<i128>(x.b) * y.b;
    i128 re = static_cast<i128>(x.a) * y.a - bb;
    i128 om = static_cast<i128>(x.a) * y.b + static_cast<i128>(y.a) * x.b - bb;
    return {narrow_checked(re), narrow_checked(om)};
}

std::ostream& operator<<(std::ostream& os, const EisensteinInt& z) {
    os << "(" << z.a;
    if (z.b < 0)
        os << " - " << static_cast<unsigned long long>(-static_cast<i128>(z.b));
    else
        os << " + " << z.b;
    return os << "w)";
}

std::string to_string(const EisensteinInt& z) {
    std::ostringstream os;
    os << z;
    return os.str();
}

EisensteinInt conj(const EisensteinInt& z) { return {checked_sub(z.a, z.b), checked_sub(0, z.b)}; }

i64 norm(const EisensteinInt& z) {
    i128 a = z.a, b = z.b;
    return narrow_checked(a * a - a * b + b * b);
}

i64 trace(const EisensteinInt& z) { return narrow_checked(2 * static_cast<i128>(z.a) - z.b); }

const std::array<EisensteinInt, 6>& units() {
    static const std::array<EisensteinInt, 6> u = {
        EisensteinInt{1, 0}, EisensteinInt{1, 1}, EisensteinInt{0, 1},
        EisensteinInt{-1, 0}, EisensteinInt{-1, -1}, EisensteinInt{0, -1},
    };
    return u;
}

bool is_unit(const EisensteinInt& z) {
    i128 a = z.a, b = z.b;
    return a * a - a * b + b * b == 1;
}

std::array<EisensteinInt, 6> associates(const EisensteinInt& z) {
    std::array<EisensteinInt, 6> out;
    for (std::size_t i = 0; i < 6; ++i) out[i] = units()[i] * z;
    return out;
}

bool is_canonical(const EisensteinInt& z) { return z.a > z.b && z.b >= 0; }

EisensteinInt canonical_associate(const EisensteinInt& z) {
    if (z.is_zero()) throw std::domain_error("canonical_associate: zero has no associate class");
    for (const auto& w : associates(z))
        if (is_canonical(w)) return w;
    throw std::logic_error("canonical_associate: no associate in sector a > b >= 0");
}

namespace {

// num/den rounded to nearest, ties toward zero; den > 0.
i128 round_ties_to_zero(i128 num, i128 den) {
    i128 q = num / den;
    i128 rem = num - q * den;
    i128 abs_rem = rem < 0 ? -rem : rem;
    if (2 * abs_rem > den) q += (num < 0 ? -1 : 1);
    return q;
}

struct Wide {
    i128 a, b;
};

Wide mul_wide(const EisensteinInt& x, const EisensteinInt& y) {
    i128 bb = static_cast<i128>(x.b) * y.b;
    return {static_cast<i128>(x.a) * y.a - bb,
            static_cast<i128>(x.a) * y.b + static_cast<i128>(y.a) * x.b - bb};
}

}  // namespace

std::pair<EisensteinInt, EisensteinInt> divrem(const EisensteinInt& n, const EisensteinInt& d) {
    if (d.is_zero()) throw std::domain_error("divrem: division by zero");
    // n / d = n conj(d) / norm(d)
    Wide num = mul_wide(n, conj(d));
    i128 den = norm(d);
    EisensteinInt q{narrow_checked(round_ties_to_zero(num.a, den)),
                    narrow_checked(round_ties_to_zero(num.b, den))};
    EisensteinInt r = n - q * d;
    return {q, r};
}

bool divides(const EisensteinInt& d, const EisensteinInt& n) {
    if (d.is_zero()) return n.is_zero();
    Wide num = mul_wide(n, conj(d));
    i128 den = norm(d);
    return num.a % den == 0 && num.b % den == 0;
}

EisensteinInt exact_div(const EisensteinInt& n, const EisensteinInt& d) {
    if (d.is_zero()) throw std::domain_error("exact_div: division by zero");
    Wide num = mul_wide(n, conj(d));
    i128 den = norm(d);
    if (num.a % den != 0 || num.b % den != 0) throw std::domain_error("exact_div: not divisible");
    return {narrow_checked(num.a / den), narrow_checked(num.b / den)};
}

EisensteinInt gcd(const EisensteinInt& x, const EisensteinInt& y) {
    if (x.is_zero() && y.is_zero()) throw std::domain_error("gcd: both arguments are zero");
    EisensteinInt u = x, v = y;
    while (!v.is_zero()) {
        auto [q, r] = divrem(u, v);
        u = v;
        v = r;
    }
    return canonical_associate(u);
}

EisensteinInt EisFactorization::product() const {
    EisensteinInt p = unit;
    for (const auto& [prime, e] : factors)
        for (int i = 0; i < e; ++i) p = p * prime;
    return p;
}

namespace {

// Canonical primes lying over the rational prime p.
std::vector<EisensteinInt> primes_over(u64 p) {
    if (p == 3) return {EisensteinInt{2, 1}};
    if (p % 3 == 2) return {EisensteinInt{static_cast<i64>(p), 0}};
    // p = 1 mod 3: v^2 + v + 1 = 0 mod p has v = (-1 + sqrt(-3)) / 2.
    u64 s = *sqrt_mod_prime(p - 3, p);
    u64 inv2 = (p + 1) / 2;
    u64 v = mulmod((s + p - 1) % p, inv2, p);
    EisensteinInt pi = gcd(EisensteinInt{static_cast<i64>(p), 0}, EisensteinInt{static_cast<i64>(v), -1});
    EisensteinInt pi_bar = canonical_associate(conj(pi));
    return {pi, pi_bar};
}

}  // namespace

EisFactorization factor(const EisensteinInt& z) {
    if (z.is_zero()) throw std::domain_error("factor: zero has no factorisation");
    EisFactorization result;
    EisensteinInt rest = z;
    for (auto [p, e] : factor_u64(static_cast<u64>(norm(z)))) {
        (void)e;
        for (const auto& pi : primes_over(p)) {
            int k = 0;
            while (divides(pi, rest)) {
                rest = exact_div(rest, pi);
                ++k;
            }
            if (k > 0) result.factors.emplace_back(pi, k);
        }
    }
    if (!is_unit(rest)) throw std::logic_error("factor: cofactor is not a unit");
    result.unit = rest;
    std::sort(result.factors.begin(), result.factors.end(), [](const auto& l, const auto& r) {
        return std::make_tuple(norm(l.first), l.first.a, l.first.b) <
               std::make_tuple(norm(r.first), r.first.a, r.first.b);
    });
    return result;
}

bool is_prime(const EisensteinInt& z) {
    if (z.is_zero()) throw std::domain_error("is_prime: zero");
    u64 n = static_cast<u64>(norm(z));
    if (is_prime_u64(n)) return true;
    u64 r = isqrt(n);
    if (r * r != n || !is_prime_u64(r) || r % 3 != 2) return false;
    return canonical_associate(z) == EisensteinInt{static_cast<i64>(r), 0};
}

int mobius_eis(const EisensteinInt& z) {
    if (z.is_zero()) throw std::domain_error("mobius_eis: zero");
    auto f = factor(z);
    int sign = 1;
    for (const auto& [pi, e] : f.factors) {
        if (e >= 2) return 0;
        sign = -sign;
    }
    return sign;
}

}  // namespace eis
