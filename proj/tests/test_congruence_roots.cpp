#include <doctest.h>

#include <cmath>

#include "eisenstein/congruence_roots.hpp"
#include "oracles.hpp"

using namespace eis;

TEST_CASE("roots agree with exhaustive search") {
    for (u64 d = 1; d <= 2000; ++d) REQUIRE(roots_mod(d).roots == oracle::roots(d));
    CHECK(roots_mod(1).roots == std::vector<u64>{0});
    CHECK_THROWS(roots_mod(0));
    CHECK_THROWS_AS(roots_mod_prime(15), std::invalid_argument);
}

TEST_CASE("rho values and multiplicativity") {
    CHECK(rho(91) == 4);
    CHECK(rho(3) == 1);
    CHECK(rho(9) == 0);
    CHECK(rho(4) == 2);
    CHECK(rho(8) == 0);
    CHECK(rho(5) == 0);
    auto table = rho_table(3000);
    for (u64 d = 1; d <= 3000; ++d) REQUIRE(table[d] == rho(d));
    for (u64 a = 1; a <= 60; ++a)
        for (u64 b = 1; b <= 60; ++b)
            if (oracle::gcd(a, b) == 1) REQUIRE(rho(a * b) == rho(a) * rho(b));
}

TEST_CASE("rho_h is a real sum bounded by rho") {
    for (u64 d = 1; d <= 300; ++d) {
        auto rs = roots_mod(d);
        CHECK(std::abs(rho_h(0, rs) - std::complex<double>(static_cast<double>(rs.rho()), 0)) < 1e-12);
        for (i64 h : {1, 2, 5, -7, 100}) {
            auto v = rho_h(h, rs);
            CHECK(std::abs(v.imag()) < 1e-9);
            CHECK(std::abs(v) <= static_cast<double>(rs.rho()) + 1e-9);
        }
    }
}

TEST_CASE("representations are counted by rho for odd d") {
    for (u64 d = 1; d <= 1500; d += 2) {
        auto reps = representations(d);
        REQUIRE(reps.size() == rho(d));
        for (const auto& r : reps) CHECK(is_valid_representation(r));
    }
}

TEST_CASE("root correspondence: v (r + s) = r - s, not the transposed relation") {
    for (u64 d = 7; d <= 1500; d += 2) {
        for (const auto& rep : representations(d)) {
            u64 v = rep_to_root(rep);
            REQUIRE((mulmod(v, v, d) + 3) % d == 0);
            REQUIRE(root_to_rep(d, v) == rep);
        }
    }
    // the transposed relation v (r - s) = r + s squares to -1/3, not -3
    FormRepresentation rep{7, 2, 1};
    u64 w = 3;  // (r + s)/(r - s) with r - s = 1
    CHECK((mulmod(w, w, 7) + 3) % 7 != 0);
    CHECK((mulmod(rep_to_root(rep), rep_to_root(rep), 7) + 3) % 7 == 0);
}

TEST_CASE("lattice reduction matches exhaustive search") {
    for (u64 d = 1; d <= 3000; d += 2)
        for (u64 v : roots_mod(d).roots) {
            REQUIRE(root_to_rep_lattice(d, v) == root_to_rep_exhaustive(d, v));
        }
    const u64 big = 1000000000039ULL;  // prime, 1 mod 3
    REQUIRE(big % 3 == 1);
    for (u64 v : roots_mod(big).roots) {
        auto rep = root_to_rep(big, v);
        CHECK(rep_to_root(rep) == v);
    }
}

TEST_CASE("root_to_rep rejects bad input") {
    CHECK_THROWS_AS(root_to_rep(14, 1), std::invalid_argument);
    CHECK_THROWS_AS(root_to_rep(7, 1), std::invalid_argument);
    CHECK_THROWS_AS(rep_to_root(FormRepresentation{7, 2, 2}), std::invalid_argument);
}

TEST_CASE("fractional-part identity") {
    int checked = 0, skipped = 0;
    for (u64 d = 7; d <= 3000; d += 2)
        for (const auto& rep : representations(d)) {
            auto gap = fractional_identity_gap(rep);
            if (!gap) {
                CHECK((rep.r % 2 == 1 && rep.s % 2 == 1));
                ++skipped;
                continue;
            }
            REQUIRE(*gap < 1e-9);
            ++checked;
        }
    CHECK(checked > 100);
    CHECK(skipped > 0);
}

TEST_CASE("well-spacing of v/d") {
    for (u64 D : {5, 10, 40}) {
        std::vector<double> pts;
        for (u64 d = 4 * D + 1; d <= 9 * D; d += 2)
            for (u64 v : oracle::roots(d)) pts.push_back(static_cast<double>(v) / static_cast<double>(d));
        double best = 1.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                double g = std::abs(pts[i] - pts[j]);
                best = std::min(best, std::min(g, 1.0 - g));
            }
        auto s = spacing_min_gap(D);
        REQUIRE(s);
        CHECK(s->points == pts.size());
        CHECK(s->min_gap == doctest::Approx(best).epsilon(1e-12));
        CHECK(s->scaled > 0.01);
    }
}
