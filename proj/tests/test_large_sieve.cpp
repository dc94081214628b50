#include <doctest.h>

#include <cmath>
#include <numbers>

#include "env_guard.hpp"
#include "eisenstein/congruence_roots.hpp"
#include "eisenstein/large_sieve.hpp"
#include "oracles.hpp"

using namespace eis;

namespace {

std::complex<double> e(double t) { return std::polar(1.0, 2 * std::numbers::pi * t); }

LargeSieveForms naive(u64 D, const std::vector<std::complex<double>>& a) {
    double s2 = 0, s1 = 0, sr = 0, n2 = 0;
    for (const auto& c : a) n2 += std::norm(c);
    for (u64 d = 1; d <= 2 * D; ++d) {
        std::complex<double> total{};
        for (u64 v : oracle::roots(d)) {
            std::complex<double> S{};
            for (std::size_t n = 1; n <= a.size(); ++n) S += a[n - 1] * e(double(v * n % d) / double(d));
            if (d > D && d % 2 == 1) {
                s2 += std::norm(S);
                s1 += std::abs(S);
            }
            total += S;
        }
        if (d <= D) sr += std::abs(total);
    }
    const double N = double(a.size()), shape = std::sqrt(double(D)) * std::sqrt(double(D) + N) * std::sqrt(n2);
    return {s2 / ((double(D) + N) * n2), s1 / shape, sr / shape};
}

}  // namespace

TEST_CASE("forms agree with direct evaluation") {
    for (u64 D : {5, 20, 60})
        for (u64 N : {1, 17, 100}) {
            auto a = random_coefficients(N, 42 + D + N);
            auto got = large_sieve_forms(D, a);
            auto ref = naive(D, a);
            CHECK(got.l2 == doctest::Approx(ref.l2).epsilon(1e-10));
            CHECK(got.l1 == doctest::Approx(ref.l1).epsilon(1e-10));
            CHECK(got.rho_h == doctest::Approx(ref.rho_h).epsilon(1e-10));
        }
}

TEST_CASE("rho_h form uses the root exponential sums") {
    const u64 D = 40;
    auto a = random_coefficients(30, 3);
    double s = 0, n2 = 0;
    for (u64 d = 1; d <= D; ++d) {
        std::complex<double> t{};
        for (std::size_t h = 1; h <= a.size(); ++h) t += a[h - 1] * rho_h(static_cast<i64>(h), d);
        s += std::abs(t);
    }
    for (const auto& c : a) n2 += std::norm(c);
    CHECK(large_sieve_forms(D, a).rho_h ==
          doctest::Approx(s / (std::sqrt(double(D)) * std::sqrt(double(D) + 30) * std::sqrt(n2))).epsilon(1e-10));
}

TEST_CASE("single spike gives the point count") {
    const u64 D = 300, N = 500;
    std::vector<std::complex<double>> a(N);
    a[123] = {0.6, -0.8};
    u64 points = 0;
    for (u64 d = D + 1; d <= 2 * D; d += 2) points += rho(d);
    CHECK(large_sieve_forms(D, a).l2 == doctest::Approx(double(points) / double(D + N)).epsilon(1e-12));
}

TEST_CASE("edge cases") {
    CHECK(large_sieve_ratio(100, 0, 5, 42).max.l2 == 0.0);
    CHECK_THROWS_AS(large_sieve_ratio(100, 10, 0, 42), std::invalid_argument);
    CHECK(large_sieve_forms(10, {}).l2 == 0.0);
}

TEST_CASE("coefficients have unit variance and are reproducible") {
    auto a = random_coefficients(200000, 42);
    double m = 0;
    for (const auto& c : a) m += std::norm(c);
    CHECK(m / double(a.size()) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(a == random_coefficients(200000, 42));
    CHECK(a != random_coefficients(200000, 43));
}

TEST_CASE("ratios are independent of the worker count") {
    LargeSieveReport one, many;
    {
        ThreadsGuard g(1);
        one = large_sieve_ratio(500, 300, 4, 42);
    }
    {
        ThreadsGuard g(4);
        many = large_sieve_ratio(500, 300, 4, 42);
    }
    CHECK(one.max.l2 == many.max.l2);
    CHECK(one.max.l1 == many.max.l1);
    CHECK(one.max.rho_h == many.max.rho_h);
}
