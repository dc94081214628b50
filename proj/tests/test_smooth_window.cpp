#include <doctest.h>

#include <random>
#include <stdexcept>

#include "eisenstein/smooth_window.hpp"

using namespace eis;

TEST_CASE("window support and plateau") {
    SmoothWindow w(10000, 1189.2);
    CHECK(w(1.0) == 0.0);
    CHECK(w(0.5) == 0.0);
    CHECK(w(10000) == 0.0);
    CHECK(w(5000) == 1.0);
    CHECK(w(1189.2) == 1.0);
    CHECK(w(10000 - 1189.2) == 1.0);
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(-10, 10010);
    for (int i = 0; i < 10000; ++i) {
        double f = w(u(gen));
        REQUIRE(f >= 0.0);
        REQUIRE(f <= 1.0);
    }
}

TEST_CASE("derivatives agree with finite differences") {
    SmoothWindow w(10000, 1189.2);
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(1.5, 9999.5);
    const double h = 1e-3;
    for (int i = 0; i < 100; ++i) {
        double x = u(gen);
        auto v = w.eval(x);
        double fd1 = (w(x + h) - w(x - h)) / (2 * h);
        double fd2 = (w.eval(x + h).df - w.eval(x - h).df) / (2 * h);
        CHECK(std::abs(v.df - fd1) < 1e-6);
        CHECK(std::abs(v.d2f - fd2) < 1e-6);
    }
}

TEST_CASE("derivative bounds with the recorded constant") {
    for (double y : {2.0, 10.0, 1189.2, 5000.0}) {
        SmoothWindow w(10000, y);
        const double C = w.derivative_constant();
        for (double u = 0; u <= 10001; u += 0.37) {
            auto v = w.eval(u);
            REQUIRE(std::abs(v.df) <= C / y * (1 + 1e-12));
            REQUIRE(std::abs(v.d2f) <= C / (y * y) * (1 + 1e-12));
        }
    }
}

TEST_CASE("C^2 across the joints") {
    SmoothWindow w(1000, 100);
    for (double joint : {1.0, 100.0, 900.0, 1000.0}) {
        auto l = w.eval(joint - 1e-9), r = w.eval(joint + 1e-9);
        CHECK(std::abs(l.f - r.f) < 1e-8);
        CHECK(std::abs(l.df - r.df) < 1e-8);
        CHECK(std::abs(l.d2f - r.d2f) < 1e-6);
    }
}

TEST_CASE("construction rules") {
    CHECK_THROWS_AS(SmoothWindow(100, 60), std::invalid_argument);
    CHECK_THROWS_AS(SmoothWindow(100, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SmoothWindow(100, -1), std::invalid_argument);
    SmoothWindow tiny(1.5, 0.75);
    CHECK(tiny.degenerate());
    CHECK(tiny(1.2) == 0.0);
    CHECK(transition_width(10000, 2) == doctest::Approx(1000 * std::pow(2.0, 0.25)));
    CHECK(transition_width(100, 1e6) == 50.0);
}
