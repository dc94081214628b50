// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "env_guard.hpp"
#include "eisenstein/bilinear.hpp"
#include "eisenstein/congruence_roots.hpp"
#include "eisenstein/eisenstein_int.hpp"
#include "eisenstein/large_sieve.hpp"
#include "eisenstein/poisson.hpp"
#include "eisenstein/sieve_sums.hpp"
#include "oracles.hpp"

using namespace eis;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const SieveTable& big_table() {
    static const SieveTable t = build_table(10'000'000);
    return t;
}

Outcome ring_suite() {
    const i64 limit = 10000;
    u64 elements = 0, failures = 0, products = 0;
    std::vector<EisensteinInt> all;
    for (i64 b = -116; b <= 116; ++b)
        for (i64 a = -232; a <= 232; ++a) {
            if ((a == 0 && b == 0) || oracle::norm(a, b) > limit) continue;
            EisensteinInt z{a, b};
            all.push_back(z);
            ++elements;
            auto f = factor(z);
            i64 nprod = 1;
            for (const auto& [p, e] : f.factors) {
                if (!is_canonical(p) || !is_prime(p)) ++failures;
                for (int i = 0; i < e; ++i) nprod *= norm(p);
            }
            if (f.product() != z || nprod != norm(z) || !is_unit(f.unit)) ++failures;
            int canon = 0;
            for (const auto& v : associates(z)) canon += is_canonical(v);
            if (canon != 1) ++failures;
        }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return norm(x) < norm(y); });
    for (const auto& z1 : all) {
        const i64 n1 = norm(z1);
        for (const auto& z2 : all) {
            const i64 n2 = norm(z2);
            if (n1 * n2 > limit) break;
            ++products;
            if (norm(z1 * z2) != n1 * n2) ++failures;
        }
    }
    return {failures == 0, fmt("%llu elements, %llu products, %llu failures", (unsigned long long)elements,
                               (unsigned long long)products, (unsigned long long)failures)};
}

Outcome root_suite() {
    u64 failures = 0, pairs = 0;
    for (u64 d = 1; d <= 10000; ++d)
        if (roots_mod(d).roots != oracle::roots(d)) ++failures;
    for (u64 a = 1; a <= 10000; ++a)
        for (u64 b = 1; a * b <= 10000; ++b) {
            if (oracle::gcd(a, b) != 1) continue;
            ++pairs;
            if (rho(a * b) != rho(a) * rho(b)) ++failures;
        }
    return {failures == 0, fmt("d <= 10000 exhaustive, %llu coprime pairs, %llu failures", (unsigned long long)pairs,
                               (unsigned long long)failures)};
}

Outcome correspondence_suite() {
    u64 moduli = 0, roots = 0, failures = 0;
    for (u64 d = 1; d <= 5000; d += 2) {
        const u64 r = rho(d);
        if (r == 0) continue;
        ++moduli;
        u64 brute = 0;
        for (i64 s = 0; 3 * s * s <= 4 * static_cast<i64>(d); ++s)
            for (i64 rr = 1; rr * rr <= static_cast<i64>(d); ++rr)
                if (rr * rr + rr * s + s * s == static_cast<i64>(d) && oracle::gcd(rr, s) == 1) ++brute;
        auto reps = representations(d);
        if (reps.size() != r || brute != r) ++failures;
        for (const auto& rep : reps)
            if (root_to_rep(d, rep_to_root(rep)) != rep) ++failures;
        for (u64 v : roots_mod(d).roots) {
            ++roots;
            if (rep_to_root(root_to_rep(d, v)) != v) ++failures;
        }
    }
    return {failures == 0, fmt("%llu odd moduli, %llu roots, v = (r-s)/(r+s) mod d, %llu failures",
                               (unsigned long long)moduli, (unsigned long long)roots, (unsigned long long)failures)};
}

Outcome sequence_oracle() {
    const u64 x = 100000;
    auto t = build_table(x);
    auto ref = oracle::sequence(x);
    double worst = 0.0;
    u64 failures = 0;
    for (u64 n = 1; n <= x; ++n) {
        const double scale = std::max(std::abs(ref[n]), 1e-300);
        const double rel = ref[n] == 0.0 ? std::abs(t.a[n]) : std::abs(t.a[n] - ref[n]) / scale;
        worst = std::max(worst, rel);
        if (rel > 1e-9) ++failures;
        if ((n % 2 == 0 || n % 3 == 2) && t.a[n] != 0.0) ++failures;
    }
    return {failures == 0, fmt("x = 1e5, max relative deviation %.3g, %llu failures", worst, (unsigned long long)failures)};
}

Outcome poisson_identity() {
    const double x = 1e4;
    SmoothWindow w(x, transition_width(x, 2.0));
    double worst = 0.0;
    u64 count = 0, K = 0;
    bool ok = true;
    for (u64 d = 1; d <= 50; d += 2) {
        if (rho(4 * d) == 0) continue;
        auto p = poisson_residual(d, w);
        ++count;
        worst = std::max(worst, p.residual);
        K = std::max(K, p.K);
        ok = ok && p.converged && p.residual < 1e-6;
    }
    return {ok, fmt("%llu moduli, y = %.1f, max residual %.3g, max K %llu", (unsigned long long)count, w.y(), worst,
                    (unsigned long long)K)};
}

Outcome large_sieve_grid() {
    const std::vector<u64> grid = {100, 1000, 10000};
    double diag[3][3] = {};  // [step][form]
    double constant[3] = {};
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) {
            auto rep = large_sieve_ratio(grid[i], grid[j], 50, 42).max;
            double f[3] = {rep.l2, rep.l1, rep.rho_h};
            for (int k = 0; k < 3; ++k) constant[k] = std::max(constant[k], f[k]);
            if (i == j)
                for (int k = 0; k < 3; ++k) diag[i][k] = f[k];
        }
    bool ok = constant[2] <= 20.0;
    for (int step = 1; step < 3; ++step)
        for (int k = 0; k < 3; ++k) ok = ok && diag[step][k] <= 1.2 * diag[step - 1][k];
    return {ok, fmt("constants l2 %.4f, l1 %.4f, rho_h %.4f; diagonal l2 %.4f -> %.4f -> %.4f", constant[0],
                    constant[1], constant[2], diag[0][0], diag[1][0], diag[2][0])};
}

Outcome remainder_scaling() {
    const auto& t = big_table();
    auto cal = calibrate_kappa(t, 10'000'000);
    double lo = 1e300, hi = 0.0;
    std::string values;
    for (u64 x : {100000ULL, 1000000ULL, 10000000ULL}) {
        auto rep = remainder_R(t, x, isqrt(x), 32);
        lo = std::min(lo, rep.ratio);
        hi = std::max(hi, rep.ratio);
        values += fmt("%s%.4f", values.empty() ? "" : ", ", rep.ratio);
    }
    const bool ok = cal.chosen == kKappa && hi / lo < 3.0;
    return {ok, fmt("kappa %.1f, ratios %s, spread %.3f", cal.chosen, values.c_str(), hi / lo)};
}

Outcome singular_series() {
    auto a = singular_series_H(100000, ThreeAdicConvention::uniform);
    auto b = singular_series_H(1000000, ThreeAdicConvention::uniform);
    const double diff = std::abs(a.H - b.H);
    double raw_gap = 0.0;
    for (auto conv : {ThreeAdicConvention::uniform, ThreeAdicConvention::corrected})
        for (u64 P : {100000ULL, 1000000ULL}) {
            auto s = singular_series_H(P, conv);
            raw_gap = std::max(raw_gap, std::abs(s.H_raw - s.H));
        }
    const bool ok = diff < 1e-4 && raw_gap < 1e-8;
    return {ok, fmt("H(1e5) = %.7f, H(1e6) = %.7f, difference %.3g (needs < 1e-4); accelerated limit %.7f; "
                    "raw vs rearranged %.3g",
                    a.H, b.H, diff, b.limit, raw_gap)};
}

Outcome headline() {
    const auto& t = big_table();
    const auto H = singular_series_H(1000000);
    const auto Hp = singular_series_H(1000000, ThreeAdicConvention::uniform);
    auto rows = theorem_convergence(t, {10000, 100000, 1000000, 10000000}, H.limit);
    bool ok = rows.back().ratio >= 0.8 && rows.back().ratio <= 1.2;
    std::string values, uniform;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) ok = ok && std::abs(rows[i].ratio - 1) < std::abs(rows[i - 1].ratio - 1);
        values += fmt("%s%.5f", i ? ", " : "", rows[i].ratio);
        uniform += fmt("%s%.4f", i ? ", " : "", rows[i].S / (Hp.limit * rows[i].A));
    }
    return {ok, fmt("H = %.6f, S/(H A) at 1e4..1e7: %s (uniform local factor at 3: %s)", H.limit, values.c_str(),
                    uniform.c_str())};
}

Outcome bilinear() {
    const auto& t = big_table();
    auto rows = bilinear_decay(0.2, {1000, 10000, 100000}, t);
    bool ok = true;
    std::string values;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) ok = ok && rows[i].b1_over_MN < rows[i - 1].b1_over_MN;
        values += fmt("%s%.5f (M = %llu)", i ? ", " : "", rows[i].b1_over_MN, (unsigned long long)rows[i].M);
    }
    auto id = factorization_identity(t, 10000);
    ok = ok && id.max_residual < 1e-9;
    return {ok, fmt("B1/(MN): %s; identity over %llu coprime pairs, max residual %.3g", values.c_str(),
                    (unsigned long long)id.pairs, id.max_residual)};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands = {
        {"theorem", "--x", "100000"},
        {"theorem", "--x", "1000", "--format", "csv"},
        {"remainders", "--x", "100000", "--with-T"},
        {"spacing", "--dmax", "300"},
        {"poisson", "--x", "10000", "--dmax", "15"},
        {"large-sieve", "--dmax", "1000", "--N", "1000", "--trials", "5"},
        {"bilinear", "--N", "10000"},
        {"euler", "--pmax", "100000"},
        {"roots", "--d", "91"},
    };
    u64 mismatches = 0;
    std::string bad;
    for (const auto& cmd : commands) {
        std::string first;
        for (unsigned threads : {1u, 1u, 3u}) {
            ThreadsGuard g(threads);
            std::ostringstream out, err;
            int code = cli::run(cmd, out, err);
            if (code != 0) {
                ++mismatches;
                bad += " " + cmd[0] + "(exit " + std::to_string(code) + ")";
                break;
            }
            if (first.empty()) {
                first = out.str();
            } else if (out.str() != first) {
                ++mismatches;
                bad += " " + cmd[0];
            }
        }
    }
    return {mismatches == 0, fmt("%zu subcommand configurations, 3 runs each (1, 1, 3 workers), %llu mismatches%s",
                                 commands.size(), (unsigned long long)mismatches, bad.c_str())};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "ring oracle suite", 10, ring_suite},
        {2, "root oracle suite", 30, root_suite},
        {3, "root/representation correspondence", 60, correspondence_suite},
        {4, "sequence oracle", 30, sequence_oracle},
        {5, "Poisson identity", 300, poisson_identity},
        {6, "large-sieve measurements", 300, large_sieve_grid},
        {7, "remainder scaling", 900, remainder_scaling},
        {8, "singular series convergence", 60, singular_series},
        {9, "head-line ratio", 1200, headline},
        {10, "bilinear decay and factorisation identity", 600, bilinear},
        {11, "CLI determinism", 600, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = s < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << " " << c.name << ": " << o.detail
                  << fmt(" [%.1f s, limit %.0f s%s]", s, c.limit_s, in_time ? "" : ", over time") << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
