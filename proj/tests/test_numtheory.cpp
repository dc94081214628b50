#include <doctest.h>

#include <random>

#include "eisenstein/numtheory.hpp"
#include "oracles.hpp"

using namespace eis;

TEST_CASE("primality agrees with trial division below 1e5") {
    for (u64 n = 0; n < 100000; ++n) REQUIRE(is_prime_u64(n) == oracle::prime(n));
}

TEST_CASE("primality on large and adversarial inputs") {
    CHECK(is_prime_u64(2305843009213693951ULL));  // 2^61 - 1
    CHECK(is_prime_u64(18446744073709551557ULL)); // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(561));
    CHECK_FALSE(is_prime_u64(3215031751ULL));     // strong pseudoprime to 2, 3, 5, 7
    CHECK_FALSE(is_prime_u64(3825123056546413051ULL));
}

TEST_CASE("factorisation reconstructs its input") {
    std::mt19937_64 gen(42);
    for (int i = 0; i < 2000; ++i) {
        u64 n = gen() >> (i % 40) | 1;
        u128 prod = 1;
        u64 prev = 0;
        for (auto [p, k] : factor_u64(n)) {
            CHECK(is_prime_u64(p));
            CHECK(p > prev);
            prev = p;
            for (int j = 0; j < k; ++j) prod *= p;
        }
        REQUIRE(prod == n);
    }
    CHECK(factor_u64(1).empty());
    CHECK_THROWS(factor_u64(0));
}

TEST_CASE("modular inverse and power") {
    for (u64 m = 1; m < 300; ++m)
        for (u64 a = 0; a < m; ++a) {
            auto inv = inverse_mod(a, m);
            REQUIRE(inv.has_value() == (oracle::gcd(a, m) == 1));
            if (inv && m > 1) CHECK(mulmod(a, *inv, m) == 1);
        }
    CHECK(powmod(3, 200, 1000000007ULL) == powmod(9, 100, 1000000007ULL));
    CHECK(powmod(5, 0, 1) == 0);
}

TEST_CASE("square roots modulo primes") {
    for (u64 p = 3; p < 1500; p += 2) {
        if (!oracle::prime(p)) continue;
        for (u64 a = 0; a < p; ++a) {
            bool qr = false;
            for (u64 t = 0; t < p && !qr; ++t) qr = (t * t) % p == a;
            auto s = sqrt_mod_prime(a, p);
            REQUIRE(s.has_value() == qr);
            if (s) CHECK(mulmod(*s, *s, p) == a);
        }
    }
}

TEST_CASE("integer square root at the edges") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt(~0ULL) == 4294967295ULL);
    CHECK(isqrt(4294967296ULL * 4294967295ULL) == 4294967295ULL);
}

TEST_CASE("checked arithmetic throws instead of wrapping") {
    CHECK_THROWS_AS(checked_mul(1LL << 40, 1LL << 30), std::overflow_error);
    CHECK_THROWS_AS(checked_add(std::numeric_limits<i64>::max(), 1), std::overflow_error);
    CHECK(checked_mul(-3, 7) == -21);
}

TEST_CASE("phi, primes and compensated sums") {
    for (u64 n = 1; n <= 1000; ++n) {
        u64 phi = 0;
        for (u64 k = 1; k <= n; ++k) phi += oracle::gcd(k, n) == 1;
        REQUIRE(euler_phi(n) == phi);
    }
    CHECK(primes_up_to(100).size() == 25);
    CHECK(primes_up_to(1).empty());
    KahanSum s;
    s += 1.0;
    for (int i = 0; i < 1000000; ++i) s += 1e-16;
    CHECK(s.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-15));
}
