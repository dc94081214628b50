#include "eisenstein/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace eis {

NormIndex::NormIndex(u64 n_max) : n_max_(n_max), offset_(n_max + 2, 0) {
    // (2a - b)^2 + 3 b^2 = 4 N(a + b w)
    const i64 bmax = static_cast<i64>(isqrt(4 * n_max / 3));
    auto visit = [&](auto&& fn) {
        for (i64 b = -bmax; b <= bmax; ++b) {
            const i64 room = static_cast<i64>(4 * n_max) - 3 * b * b;
            if (room < 0) continue;
            const i64 t = static_cast<i64>(isqrt(static_cast<u64>(room)));
            // |2a - b| <= t
            for (i64 a = (b - t + 1) / 2 - 1; 2 * a - b <= t; ++a) {
                if (2 * a - b < -t) continue;
                EisensteinInt z{a, b};
                const u64 n = static_cast<u64>(norm(z));
                if (n >= 1 && n <= n_max) fn(z, n);
            }
        }
    };
    visit([&](const EisensteinInt&, u64 n) { ++offset_[n + 1]; });
    std::partial_sum(offset_.begin(), offset_.end(), offset_.begin());
    elems_.resize(offset_.back());
    std::vector<std::size_t> cursor(offset_.begin(), offset_.end() - 1);
    visit([&](const EisensteinInt& z, u64 n) { elems_[cursor[n]++] = z; });
}

std::span<const EisensteinInt> NormIndex::of_norm(u64 n) const {
    if (n == 0 || n > n_max_) return {};
    return {elems_.data() + offset_[n], offset_[n + 1] - offset_[n]};
}

std::span<const EisensteinInt> NormIndex::in_range(u64 lo, u64 hi) const {
    hi = std::min(hi, n_max_);
    if (lo >= hi) return {};
    return {elems_.data() + offset_[lo + 1], offset_[hi + 1] - offset_[lo + 1]};
}

GammaTable::GammaTable(u64 limit) : g_(limit + 1, 0.0) {
    for (std::uint32_t p : primes_up_to(limit))
        if (p > 2) g_[p] = std::log(static_cast<double>(p));
}

double GammaTable::operator()(i64 l) const {
    if (l <= 2) return 0.0;
    if (static_cast<u64>(l) < g_.size()) return g_[static_cast<std::size_t>(l)];
    return gamma_weight(l);
}

i64 delta_pair(const EisensteinInt& m1, const EisensteinInt& m2) {
    return narrow_checked(static_cast<i128>(m1.b) * m2.a - static_cast<i128>(m1.a) * m2.b);
}

u64 eta(const EisensteinInt& m1, const EisensteinInt& m2, i64 delta) {
    if (delta == 0) throw degenerate_pair_error("eta: Delta = 0 (parallel pair, degenerate class)");
    const u64 D = static_cast<u64>(delta < 0 ? -delta : delta);
    u64 count = 0;
    for (u64 a = 0; a < D; ++a) {
        if (gcd_u64(a, D) != 1) continue;
        i128 ra = static_cast<i128>(m1.a) - static_cast<i128>(a) * m2.a;
        i128 rb = static_cast<i128>(m1.b) - static_cast<i128>(a) * m2.b;
        if (ra % static_cast<i128>(D) == 0 && rb % static_cast<i128>(D) == 0) ++count;
    }
    return count;
}

namespace {

struct Cross {
    i128 a, b;
};

// l1 m2 - l2 m1
Cross cross_combination(i64 l1, const EisensteinInt& m2, i64 l2, const EisensteinInt& m1) {
    return {static_cast<i128>(l1) * m2.a - static_cast<i128>(l2) * m1.a,
            static_cast<i128>(l1) * m2.b - static_cast<i128>(l2) * m1.b};
}

i128 norm_wide(const Cross& w) { return w.a * w.a - w.a * w.b + w.b * w.b; }

bool window_ok(const Cross& w, i64 delta, u64 N, u64 Np) {
    const i128 scale = 3 * static_cast<i128>(delta) * delta;
    const i128 nw = norm_wide(w);
    return nw > scale * N && nw <= scale * Np;
}

bool congruent(const Cross& w, i64 delta) {
    const i128 D = delta < 0 ? -static_cast<i128>(delta) : delta;
    return w.a % D == 0 && w.b % D == 0;
}

}  // namespace

PairSum s_pair(const EisensteinInt& m1, const EisensteinInt& m2, u64 N, u64 Np, const NormIndex& idx,
               const GammaTable& gamma) {
    if (Np > idx.n_max()) throw capacity_error("s_pair: norm index does not reach N'");
    const i64 delta = delta_pair(m1, m2);
    PairSum out;
    KahanSum sum;
    for (const auto& n : idx.in_range(N, Np)) {
        const i64 l1 = trace(n * m1);
        const double g1 = gamma(l1);
        if (g1 == 0.0) continue;
        const i64 l2 = trace(n * m2);
        const double g2 = gamma(l2);
        if (g2 == 0.0) continue;
        ++out.contributing;
        sum += g1 * g2;
        if (delta != 0) {
            Cross w = cross_combination(l1, m2, l2, m1);
            if (!congruent(w, delta)) ++out.congruence_fail;
            if (!window_ok(w, delta, N, Np)) ++out.window_fail;
        }
    }
    out.value = sum.value();
    return out;
}

double s_pair_filtered(const EisensteinInt& m1, const EisensteinInt& m2, u64 N, u64 Np, const GammaTable& gamma) {
    const i64 delta = delta_pair(m1, m2);
    if (delta == 0) throw degenerate_pair_error("s_pair_filtered: Delta = 0 (parallel pair, degenerate class)");
    // |tr z| <= 2 sqrt(N(z))
    const u64 L1 = 2 * isqrt(static_cast<u64>(norm(m1)) * Np) + 2;
    const u64 L2 = 2 * isqrt(static_cast<u64>(norm(m2)) * Np) + 2;
    const auto p1 = primes_up_to(L1);
    const auto p2 = primes_up_to(L2);
    const EisensteinInt q = EisensteinInt{1, 2} * EisensteinInt{delta, 0};
    KahanSum sum;
    for (std::uint32_t l1 : p1) {
        if (l1 == 2) continue;
        for (std::uint32_t l2 : p2) {
            if (l2 == 2) continue;
            Cross w = cross_combination(l1, m2, l2, m1);
            if (!congruent(w, delta) || !window_ok(w, delta, N, Np)) continue;
            EisensteinInt wz{narrow_checked(w.a), narrow_checked(w.b)};
            if (!divides(q, wz)) continue;
            EisensteinInt n = conj(-exact_div(wz, q));
            if (trace(n * m1) != static_cast<i64>(l1) || trace(n * m2) != static_cast<i64>(l2))
                throw std::logic_error("s_pair_filtered: recovered n does not reproduce the traces");
            sum += gamma(l1) * gamma(l2);
        }
    }
    return sum.value();
}

DegenerateCount degenerate_pairs(u64 M, u64 Mp, const NormIndex& idx) {
    if (Mp > idx.n_max()) throw capacity_error("degenerate_pairs: norm index does not reach M'");
    auto elems = idx.in_range(M, Mp);
    DegenerateCount out;
    out.elements = elems.size();
    for (const auto& z1 : elems)
        for (const auto& z2 : elems)
            if (delta_pair(z1, z2) == 0) ++out.by_delta;
    std::map<std::pair<i64, i64>, u64> directions;
    for (const auto& z : elems) {
        i64 g = gcd_i64(z.a, z.b);
        i64 a = z.a / g, b = z.b / g;
        if (a < 0 || (a == 0 && b < 0)) {
            a = -a;
            b = -b;
        }
        ++directions[{a, b}];
    }
    for (const auto& [dir, c] : directions) out.by_direction += c * c;
    return out;
}

IdentityCheck factorization_identity(const SieveTable& table, u64 limit) {
    if (limit > table.x) throw capacity_error("factorization_identity: limit exceeds the table range");
    NormIndex idx(limit);
    GammaTable gamma(2 * isqrt(limit) + 2);
    IdentityCheck out;
    for (u64 m = 1; m <= limit; ++m) {
        auto em = idx.of_norm(m);
        if (em.empty()) continue;
        for (u64 n = 1; m * n <= limit; ++n) {
            if (gcd_u64(m, n) != 1) continue;
            auto en = idx.of_norm(n);
            if (en.empty()) continue;
            KahanSum s;
            for (const auto& a : em)
                for (const auto& b : en) s += gamma(trace(a * b));
            ++out.pairs;
            out.max_residual = std::max(out.max_residual, std::abs(6.0 * table.a[m * n] - s.value()));
        }
    }
    return out;
}

BilinearReport bilinear_B(u64 M, u64 N, u64 Mp, u64 Np, const SieveTable& table, const BilinearOptions& opt) {
    if (M == 0 || N == 0 || !(M < Mp) || !(N < Np))
        throw std::invalid_argument("bilinear_B: need 0 < M < M' and 0 < N < N'");
    if (static_cast<u128>(Mp) * Np > table.x)
        throw capacity_error("bilinear_B: M'N' = " + std::to_string(static_cast<u64>(static_cast<u128>(Mp) * Np)) +
                             " exceeds the table range " + std::to_string(table.x));
    BilinearReport rep;
    rep.M = M;
    rep.N = N;
    rep.Mp = Mp;
    rep.Np = Np;

    KahanSum b1, b1c;
    for (u64 n = N; n <= Np; ++n) {
        KahanSum all, cop;
        for (u64 m = M + 1; m <= Mp; ++m) {
            if (table.mu[m] == 0) continue;
            double v = table.a[m * n] * table.mu[m];
            all += v;
            if (n > N && gcd_u64(m, n) == 1) cop += v;
        }
        b1 += std::abs(all.value());
        if (n > N) b1c += std::abs(cop.value());
    }
    rep.b1 = b1.value();
    rep.b1_coprime = b1c.value();
    rep.b1_over_MN = rep.b1 / (static_cast<double>(M) * static_cast<double>(N));
    if (!opt.eisenstein) return rep;

    NormIndex idx(std::max(Mp, Np));
    GammaTable gamma(2 * isqrt(Mp * Np) + 2);
    struct Mult {
        EisensteinInt z;
        u64 nm;
        int mu_rat, mu_eis;
    };
    std::vector<Mult> ms;
    for (const auto& z : idx.in_range(M, Mp)) {
        u64 nm = static_cast<u64>(norm(z));
        ms.push_back({z, nm, table.mu[nm], mobius_eis(z)});
    }

    KahanSum b1e, b2, b3;
    for (u64 n = N + 1; n <= Np; ++n) {
        auto en = idx.of_norm(n);
        if (en.empty()) continue;
        KahanSum rat;
        for (const auto& nz : en) {
            KahanSum s;
            for (const auto& m : ms) {
                double g = gamma(trace(m.z * nz));
                if (g == 0.0) continue;
                if (m.mu_eis) s += m.mu_eis * g;
                if (m.mu_rat && gcd_u64(m.nm, n) == 1) rat += m.mu_rat * g;
            }
            b2 += std::abs(s.value());
            b3 += s.value() * s.value();
        }
        b1e += std::abs(rat.value()) / 6.0;
    }
    rep.b1_coprime_eis = b1e.value();
    rep.b2 = b2.value();
    rep.b3 = b3.value();

    std::vector<const Mult*> squarefree;
    for (const auto& m : ms)
        if (m.mu_eis) squarefree.push_back(&m);
    const u64 n_elems = idx.in_range(N, Np).size();
    const u128 work = static_cast<u128>(squarefree.size()) * squarefree.size() * n_elems;
    if (work <= opt.pair_budget) {
        KahanSum s;
        for (const auto* a : squarefree)
            for (const auto* b : squarefree)
                s += a->mu_eis * b->mu_eis * s_pair(a->z, b->z, N, Np, idx, gamma).value;
        rep.b3_pairs = s.value();
    }
    if (static_cast<u128>(ms.size()) * ms.size() <= opt.histogram_budget) {
        for (const auto& a : ms)
            for (const auto& b : ms) ++rep.delta_histogram[delta_pair(a.z, b.z)];
        rep.degenerate = rep.delta_histogram.count(0) ? rep.delta_histogram.at(0) : 0;
    }
    return rep;
}

std::vector<DecayRow> bilinear_decay(double delta, const std::vector<u64>& Ns, const SieveTable& table) {
    std::vector<DecayRow> out;
    for (u64 N : Ns) {
        u64 M = std::max<u64>(1, static_cast<u64>(std::llround(std::pow(static_cast<double>(N), delta))));
        auto rep = bilinear_B(M, N, 2 * M, 2 * N, table, BilinearOptions{.eisenstein = false});
        out.push_back({N, M, rep.b1_over_MN});
    }
    return out;
}

std::vector<double> pair_class_sums(u64 q, u64 x, std::complex<double> alpha, double y) {
    if (q == 0) throw std::invalid_argument("pair_class_sums: q must be positive");
    std::vector<double> gamma(x + 1, 0.0);
    std::vector<std::uint32_t> odd;
    for (std::uint32_t p : primes_up_to(x))
        if (p > 2) {
            gamma[p] = std::log(static_cast<double>(p));
            odd.push_back(p);
        }
    // W[n] = gamma_n + W[n - q]: cumulative sum along the class of n.
    std::vector<double> W(gamma);
    for (u64 n = q; n <= x; ++n) W[n] += W[n - q];
    std::vector<double> P(gamma);
    for (u64 n = 1; n <= x; ++n) P[n] += P[n - 1];
    auto upto = [&](i64 h, u64 c) -> double {  // sum of gamma_n, n <= h, n = c (mod q)
        if (h < 0) return 0.0;
        u64 hu = static_cast<u64>(h);
        if (hu < c) return 0.0;
        return W[hu - (hu - c) % q];
    };

    std::vector<KahanSum> acc(q + 1);  // slot q: no congruence condition
    for (std::uint32_t l2 : odd) {
        const double l2d = static_cast<double>(l2);
        const double disc = y * y - alpha.imag() * alpha.imag() * l2d * l2d;
        if (disc < 0) continue;
        const double half = std::sqrt(disc);
        i64 lo = std::max<i64>(1, static_cast<i64>(std::ceil(alpha.real() * l2d - half)));
        i64 hi = std::min<i64>(static_cast<i64>(x), static_cast<i64>(std::floor(alpha.real() * l2d + half)));
        if (lo > hi) continue;
        const double g2 = gamma[l2];
        acc[q] += g2 * (P[static_cast<u64>(hi)] - P[static_cast<u64>(lo - 1)]);
        for (u64 a = 0; a < q; ++a) {
            const u64 c = mulmod(a, l2 % q, q);
            double s = upto(hi, c) - upto(lo - 1, c);
            if (s != 0.0) acc[a] += g2 * s;
        }
    }
    std::vector<double> out(q + 1);
    for (u64 a = 0; a <= q; ++a) out[a] = acc[a].value();
    return out;
}

PairEquidistribution pair_equidistribution(u64 q, u64 x, double y_frac) {
    PairEquidistribution out;
    out.q = q;
    out.x = x;
    out.y_frac = y_frac;
    out.alphas = {1.0, 0.5, 2.0, {0.5, 0.5}, std::polar(1.0, std::numbers::pi / 3.0)};
    const double x2 = static_cast<double>(x) * static_cast<double>(x);
    const double phi = static_cast<double>(euler_phi(q));
    for (const auto& alpha : out.alphas) {
        auto raw = pair_class_sums(q, x, alpha, y_frac * static_cast<double>(x));
        const double total = raw[q];
        double worst = 0.0;
        for (u64 a = 0; a < q; ++a) {
            if (gcd_u64(a, q) != 1) continue;
            worst = std::max(worst, std::abs(raw[a] - total / phi));
        }
        out.per_alpha.push_back(worst / x2);
        out.max_discrepancy = std::max(out.max_discrepancy, worst / x2);
    }
    return out;
}

}  // namespace eis
