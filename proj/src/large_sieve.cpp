#include "eisenstein/large_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "eisenstein/congruence_roots.hpp"
#include "eisenstein/parallel.hpp"

namespace eis {

std::vector<LargeSieveForms> large_sieve_forms_batch(u64 D, const std::vector<std::vector<std::complex<double>>>& alphas) {
    const std::size_t T = alphas.size();
    std::vector<LargeSieveForms> out(T);
    if (D == 0 || T == 0) return out;

    // Per-(trial, d) contributions: slot[t][d - 1] for the squared sum, the
    // l1 sum and |sum_v S|.
    const u64 top = 2 * D;
    std::vector<double> sq(T * top, 0.0), l1(T * top, 0.0), rh(T * top, 0.0);
    parallel_chunks(1, top + 1, [&](unsigned, std::size_t lo, std::size_t hi) {
        std::vector<std::complex<double>> twiddle, folded;
        for (u64 d = lo; d < hi; ++d) {
            const bool in_dyadic = d > D && d % 2 == 1;
            if (!in_dyadic && d > D) continue;
            RootSet roots = roots_mod(d);
            if (roots.roots.empty()) continue;
            twiddle.resize(d);
            for (u64 j = 0; j < d; ++j)
                twiddle[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
            folded.assign(d, {0.0, 0.0});
            for (std::size_t t = 0; t < T; ++t) {
                const auto& a = alphas[t];
                std::fill(folded.begin(), folded.end(), std::complex<double>{});
                u64 j = 1 % d;
                for (const auto& c : a) {
                    folded[j] += c;
                    if (++j == d) j = 0;
                }
                double s2 = 0.0, s1 = 0.0;
                std::complex<double> total{};
                for (u64 v : roots.roots) {
                    std::complex<double> S{};
                    u64 idx = 0;
                    for (u64 k = 0; k < d; ++k) {
                        S += folded[k] * twiddle[idx];
                        idx += v;
                        if (idx >= d) idx -= d;
                    }
                    s2 += std::norm(S);
                    s1 += std::abs(S);
                    total += S;
                }
                const std::size_t slot = t * top + (d - 1);
                if (in_dyadic) {
                    sq[slot] = s2;
                    l1[slot] = s1;
                }
                if (d <= D) rh[slot] = std::abs(total);
            }
        }
    });

    for (std::size_t t = 0; t < T; ++t) {
        const auto& a = alphas[t];
        KahanSum norm2;
        for (const auto& c : a) norm2 += std::norm(c);
        if (a.empty() || norm2.value() == 0.0) continue;
        KahanSum s2, s1, sr;
        for (u64 d = 1; d <= top; ++d) {
            s2 += sq[t * top + d - 1];
            s1 += l1[t * top + d - 1];
            sr += rh[t * top + d - 1];
        }
        const double N = static_cast<double>(a.size()), Dd = static_cast<double>(D);
        const double shape = std::sqrt(Dd) * std::sqrt(Dd + N) * std::sqrt(norm2.value());
        out[t] = {s2.value() / ((Dd + N) * norm2.value()), s1.value() / shape, sr.value() / shape};
    }
    return out;
}

LargeSieveForms large_sieve_forms(u64 D, const std::vector<std::complex<double>>& alpha) {
    return large_sieve_forms_batch(D, {alpha}).front();
}

std::vector<std::complex<double>> random_coefficients(u64 N, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::vector<std::complex<double>> out(N);
    for (auto& c : out) {
        double re = normal(gen);
        double im = normal(gen);
        c = {re, im};
    }
    return out;
}

LargeSieveReport large_sieve_ratio(u64 D, u64 N, u64 trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("large_sieve_ratio: trials must be >= 1");
    LargeSieveReport rep{D, N, trials, seed, {}};
    if (N == 0 || D == 0) return rep;
    std::vector<std::vector<std::complex<double>>> alphas;
    alphas.reserve(trials);
    for (u64 t = 0; t < trials; ++t) alphas.push_back(random_coefficients(N, seed + t));
    for (const auto& f : large_sieve_forms_batch(D, alphas)) {
        rep.max.l2 = std::max(rep.max.l2, f.l2);
        rep.max.l1 = std::max(rep.max.l1, f.l1);
        rep.max.rho_h = std::max(rep.max.rho_h, f.rho_h);
    }
    return rep;
}

}  // namespace eis
