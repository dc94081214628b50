#include "eisenstein/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eisenstein/parallel.hpp"
#include "eisenstein/quadrature.hpp"

namespace eis {

FourierValue fourier_F(u64 r, double v, const SmoothWindow& w, double abs_tol) {
    const double x = w.x(), y = w.y();
    const double r2 = static_cast<double>(r) * static_cast<double>(r);
    if (r2 > 4.0 * x) throw std::invalid_argument("fourier_F: r^2 exceeds 4x");
    if (abs_tol <= 0) abs_tol = 1e-10 * std::sqrt(x);
    FourierValue out;
    if (w.degenerate()) return out;

    auto t_of = [&](double u) { return std::sqrt(std::max(0.0, 4.0 * u - r2) / 3.0); };
    auto g = [&](double t) { return w((r2 + 3.0 * t * t) / 4.0); };
    const double ty = t_of(y), txy = t_of(x - y), tx = t_of(x);

    QuadResult rise = integrate_cosine(g, v, 0.0, ty, abs_tol / 4);
    QuadResult fall = integrate_cosine(g, v, txy, tx, abs_tol / 4);
    double flat;
    if (v == 0.0) {
        flat = txy - ty;
    } else {
        const double omega = 2.0 * std::numbers::pi * v;
        flat = (std::sin(omega * txy) - std::sin(omega * ty)) / omega;
    }
    out.value = 2.0 * (rise.value + flat + fall.value);
    out.error = 2.0 * (rise.error + fall.error);
    out.converged = rise.converged && fall.converged;
    return out;
}

std::vector<u64> poisson_classes(u64 r, u64 d) {
    if (d == 0) throw std::invalid_argument("poisson_classes: d must be positive");
    const u64 q = 4 * d;
    const u64 rq = r % q;
    const u64 r2 = mulmod(rq, rq, q);
    std::vector<u64> out;
    for (u64 c = 0; c < q; ++c)
        if ((r2 + 3 * mulmod(c, c, q)) % q == 0) out.push_back(c);
    return out;
}

PoissonReport poisson_residual(u64 d, const SmoothWindow& w, double target, u64 K_start, u64 K_max) {
    if (d == 0) throw std::invalid_argument("poisson_residual: d must be positive");
    if (K_start == 0) K_start = 1;
    PoissonReport rep;
    rep.d = d;
    rep.x = w.x();
    rep.y = w.y();
    if (w.degenerate()) return rep;

    struct Prime {
        u64 r;
        double logr;
        std::vector<u64> classes;
    };
    std::vector<Prime> primes;
    const double x = w.x();
    for (std::uint32_t r : primes_up_to(static_cast<u64>(std::floor(2.0 * std::sqrt(x))))) {
        if (r == 2 || static_cast<double>(r) * r > 4.0 * x) continue;
        auto cls = poisson_classes(r, d);
        if (!cls.empty()) primes.push_back({r, std::log(static_cast<double>(r)), std::move(cls)});
    }
    if (primes.empty()) return rep;

    // Left side: lattice points s = c (mod 4d).
    const u64 q = 4 * d;
    KahanSum lhs;
    for (const auto& p : primes) {
        const double r2 = static_cast<double>(p.r) * static_cast<double>(p.r);
        const i64 smax = static_cast<i64>(std::ceil(std::sqrt(std::max(0.0, 4.0 * x - r2) / 3.0))) + 1;
        KahanSum inner;
        for (u64 c : p.classes) {
            i64 s0 = static_cast<i64>(c) - static_cast<i64>(q) * ((static_cast<i64>(c) + smax) / static_cast<i64>(q));
            for (i64 s = s0; s <= smax; s += static_cast<i64>(q)) {
                double sd = static_cast<double>(s);
                inner += w((r2 + 3.0 * sd * sd) / 4.0);
            }
        }
        lhs += p.logr * inner.value();
    }
    rep.lhs = lhs.value();

    // Right side, one block of frequencies at a time; per-prime slots keep the
    // reduction order fixed.
    const double qd = static_cast<double>(q);
    std::vector<double> slot(primes.size()), slot_err(primes.size());
    std::vector<char> slot_ok(primes.size());
    auto block = [&](u64 k_lo, u64 k_hi) {
        parallel_chunks(0, primes.size(), [&](unsigned, std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const auto& p = primes[i];
                KahanSum acc;
                double err = 0.0;
                bool ok = true;
                for (u64 k = k_lo; k <= k_hi; ++k) {
                    double cs = 0.0;
                    for (u64 c : p.classes)
                        cs += std::cos(2.0 * std::numbers::pi * static_cast<double>(mulmod(k % q, c, q)) / qd);
                    if (std::abs(cs) < 1e-12) continue;
                    const double mult = k == 0 ? 1.0 : 2.0;
                    FourierValue F = fourier_F(p.r, static_cast<double>(k) / qd, w);
                    acc += mult * cs * F.value;
                    err += mult * std::abs(cs) * F.error;
                    ok = ok && F.converged;
                }
                slot[i] = p.logr * acc.value();
                slot_err[i] = p.logr * err;
                slot_ok[i] = ok;
            }
        });
        KahanSum s;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            s += slot[i];
            rep.quad_error += slot_err[i] / qd;
            rep.converged = rep.converged && slot_ok[i];
        }
        return s.value() / qd;
    };

    KahanSum rhs;
    rhs += block(0, 0);
    bool stable = false;
    u64 k_prev = 0;
    for (u64 K = K_start; k_prev < K_max; K = std::min(K_max, 2 * K)) {
        double b = block(k_prev + 1, K);
        rhs += b;
        k_prev = K;
        double scale = std::max(std::abs(rep.lhs), std::abs(rhs.value()));
        if (std::abs(b) <= 1e-2 * target * scale) {
            stable = true;
            break;
        }
    }
    rep.rhs = rhs.value();
    rep.K = k_prev;
    rep.converged = rep.converged && stable;
    double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
    rep.residual = scale > 0 ? std::abs(rep.lhs - rep.rhs) / scale : 0.0;
    return rep;
}

}  // namespace eis
