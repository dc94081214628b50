#include "eisenstein/sieve_sums.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eisenstein/congruence_roots.hpp"
#include "eisenstein/parallel.hpp"

namespace eis {

const char* to_string(ThreeAdicConvention c) {
    return c == ThreeAdicConvention::uniform ? "uniform" : "corrected";
}

double gamma_weight(i64 l) {
    if (l <= 2) return 0.0;
    return is_prime_u64(static_cast<u64>(l)) ? std::log(static_cast<double>(l)) : 0.0;
}

double SieveTable::lambda(u64 n) const {
    if (n > x) throw std::out_of_range("SieveTable::lambda: n exceeds table range");
    std::uint32_t p = prime_power_base[n];
    return p ? std::log(static_cast<double>(p)) : 0.0;
}

namespace {

// Smallest odd s >= 1 with r^2 + 3 s^2 >= 4 lo.
u64 first_odd_s(u64 r, u64 lo) {
    u128 need = static_cast<u128>(4) * lo;
    u128 r2 = static_cast<u128>(r) * r;
    if (r2 >= need) return 1;
    u64 t = (static_cast<u64>(need - r2) + 2) / 3;  // s^2 >= t
    u64 s = isqrt(t);
    if (s * s < t) ++s;
    if (s % 2 == 0) ++s;
    return std::max<u64>(s, 1);
}

}  // namespace

SieveTable build_table(u64 x) {
    if (x == 0) throw std::invalid_argument("build_table: x must be positive");
    if (x > kMaxTableX)
        throw capacity_error("build_table: x = " + std::to_string(x) +
                             " exceeds the maximum supported x = " + std::to_string(kMaxTableX));
    SieveTable t;
    t.x = x;
    try {
        t.a.assign(x + 1, 0.0);
        t.mu.assign(x + 1, 0);
        t.prime_power_base.assign(x + 1, 0);

        // Linear sieve into prime_power_base (holding smallest prime factors
        // until each slot is rewritten in ascending order).
        auto& spf = t.prime_power_base;
        std::vector<std::uint32_t> primes;
        for (u64 i = 2; i <= x; ++i) {
            if (spf[i] == 0) {
                spf[i] = static_cast<std::uint32_t>(i);
                primes.push_back(static_cast<std::uint32_t>(i));
            }
            for (std::uint32_t p : primes) {
                if (p > spf[i] || static_cast<u64>(p) * i > x) break;
                spf[static_cast<u64>(p) * i] = p;
            }
        }
        t.mu[1] = 1;
        for (u64 n = 2; n <= x; ++n) {
            std::uint32_t p = spf[n];
            u64 m = n / p;
            t.mu[n] = (m % p == 0) ? 0 : static_cast<std::int8_t>(-t.mu[m]);
            spf[n] = (m == 1 || spf[m] == p) ? p : 0;
        }
        u64 rmax = 2 * isqrt(x) + 1;
        for (std::uint32_t p : primes) {
            if (p > rmax) break;
            if (static_cast<u64>(p) * p <= 4 * x) t.primes.push_back(p);
        }
    } catch (const std::bad_alloc&) {
        throw capacity_error("build_table: out of memory for x = " + std::to_string(x) +
                             " (maximum supported x = " + std::to_string(kMaxTableX) + ")");
    }

    // a_n: for odd primes r and odd s >= 1, n = (r^2 + 3 s^2)/4 gets 2 log r
    // (both signs of s). Workers own disjoint n-slices and visit r in
    // ascending order, so every a[n] is accumulated in the same order
    // whatever the worker count.
    std::vector<std::pair<u64, double>> odd_primes;
    for (std::uint32_t r : t.primes)
        if (r > 2) odd_primes.emplace_back(r, 2.0 * std::log(static_cast<double>(r)));
    parallel_chunks(1, x + 1, [&](unsigned, std::size_t lo, std::size_t hi) {
        for (auto [r, w] : odd_primes) {
            u64 r2 = r * r;
            for (u64 s = first_odd_s(r, lo);; s += 2) {
                u64 n = (r2 + 3 * s * s) / 4;
                if (n >= hi || n > x) break;
                t.a[n] += w;
            }
        }
    });
    return t;
}

double A_d(const SieveTable& table, double y, u64 d) {
    if (d == 0) throw std::invalid_argument("A_d: d must be positive");
    if (y > static_cast<double>(table.x)) throw std::invalid_argument("A_d: y exceeds the table range");
    if (y < 1.0) return 0.0;
    u64 top = static_cast<u64>(std::floor(y));
    KahanSum sum;
    for (u64 n = d; n <= top; n += d) sum += table.a[n];
    return sum.value();
}

double main_term_weight(double y) {
    if (y <= 0) return 0.0;
    const double four_y = 4.0 * y;
    KahanSum sum;
    for (std::uint32_t r : primes_up_to(static_cast<u64>(std::floor(std::sqrt(four_y))))) {
        if (r == 2) continue;
        double rr = static_cast<double>(r);
        double inner = (four_y - rr * rr) / 3.0;
        if (inner <= 0) continue;
        sum += std::log(rr) * std::sqrt(inner);
    }
    return sum.value();
}

double main_term_density(u64 d, double kappa, ThreeAdicConvention conv) {
    if (d == 0) throw std::invalid_argument("main_term_density: d must be positive");
    if (conv == ThreeAdicConvention::corrected && d % 3 == 0) return 0.0;
    return kappa * static_cast<double>(rho(4 * d)) / (4.0 * static_cast<double>(d));
}

double M_d(double y, u64 d, double kappa, ThreeAdicConvention conv) {
    return main_term_density(d, kappa, conv) * main_term_weight(y);
}

KappaCalibration calibrate_kappa(const SieveTable& table, u64 x) {
    KappaCalibration cal;
    const double A = A_d(table, static_cast<double>(x), 1);
    const double P = main_term_weight(static_cast<double>(x));
    std::size_t best = 0;
    for (std::size_t i = 0; i < cal.candidates.size(); ++i) {
        double M = main_term_density(1, cal.candidates[i]) * P;
        cal.residuals[i] = std::abs(A - M) / A;
        if (cal.residuals[i] < cal.residuals[best]) best = i;
    }
    cal.chosen = cal.candidates[best];
    return cal;
}

RemainderReport remainder_R(const SieveTable& table, u64 x, u64 D, std::size_t grid, ThreeAdicConvention conv) {
    if (x > table.x) throw std::invalid_argument("remainder_R: x exceeds the table range");
    if (D == 0 || grid == 0) throw std::invalid_argument("remainder_R: D and grid must be positive");
    RemainderReport rep;
    rep.x = x;
    rep.D = D;
    rep.convention = conv;

    const double xd = static_cast<double>(x);
    for (std::size_t j = 0; j < grid; ++j)
        rep.y_grid.push_back(std::pow(xd, static_cast<double>(j) / static_cast<double>(grid)));
    rep.y_grid.push_back(xd);
    const std::size_t G = rep.y_grid.size();
    std::vector<u64> y_floor(G);
    std::vector<double> weight(G);
    for (std::size_t j = 0; j < G; ++j) {
        y_floor[j] = static_cast<u64>(std::floor(rep.y_grid[j]));
        weight[j] = main_term_weight(rep.y_grid[j]);
    }

    // A_d at every grid point in a single walk over the multiples of d.
    std::vector<double> Ad(D * G), density(D);
    parallel_chunks(1, D + 1, [&](unsigned, std::size_t lo, std::size_t hi) {
        for (u64 d = lo; d < hi; ++d) {
            density[d - 1] = main_term_density(d, rep.kappa, conv);
            KahanSum sum;
            u64 n = d;
            for (std::size_t j = 0; j < G; ++j) {
                for (; n <= y_floor[j]; n += d) sum += table.a[n];
                Ad[(d - 1) * G + j] = sum.value();
            }
        }
    });

    rep.abs_sums.assign(G, 0.0);
    for (std::size_t j = 0; j < G; ++j) {
        KahanSum sum;
        for (u64 d = 1; d <= D; ++d) sum += std::abs(Ad[(d - 1) * G + j] - density[d - 1] * weight[j]);
        rep.abs_sums[j] = sum.value();
        if (rep.abs_sums[j] > rep.R) {
            rep.R = rep.abs_sums[j];
            rep.y_at_sup = rep.y_grid[j];
        }
    }
    rep.rows.reserve(D);
    for (u64 d = 1; d <= D; ++d) {
        double a = Ad[(d - 1) * G + G - 1];
        double m = density[d - 1] * weight[G - 1];
        rep.rows.push_back({d, a, m, a - m});
    }
    rep.ratio = rep.R / (std::pow(static_cast<double>(D), 0.25) * std::pow(xd, 0.75));
    return rep;
}

std::optional<std::pair<double, double>> t_window(u64 x, u64 D) {
    if (D == 0) throw std::invalid_argument("t_window: D must be positive");
    double lo = static_cast<double>(x) / static_cast<double>(D);
    double hi = lo * lo;
    if (!(hi > lo)) return std::nullopt;
    return std::make_pair(lo, hi);
}

namespace {

double t_sum_unchecked(const SieveTable& table, u64 x, u64 D, double z) {
    KahanSum outer;
    const u64 m0 = z < 0 ? 1 : static_cast<u64>(std::floor(z)) + 1;
    for (u64 l = 1; l <= D; ++l) {
        const u64 mmax = x / l;
        KahanSum inner;
        for (u64 m = m0; m <= mmax; ++m) {
            if (table.mu[m] == 0) continue;
            double v = table.a[l * m];
            if (v != 0.0) inner += table.mu[m] > 0 ? v : -v;
        }
        outer += std::abs(inner.value());
    }
    return outer.value();
}

}  // namespace

double T_sum(const SieveTable& table, u64 x, u64 D, double z) {
    if (x > table.x) throw std::invalid_argument("T_sum: x exceeds the table range");
    auto window = t_window(x, D);
    if (!window) throw empty_range_error("T_sum: admissible z-window (x/D, x^2/D^2] is empty");
    if (!(z > window->first) || z > window->second)
        throw std::invalid_argument("T_sum: z outside (x/D, x^2/D^2]");
    return t_sum_unchecked(table, x, D, z);
}

TScan T_scan(const SieveTable& table, u64 x, u64 D, std::size_t grid) {
    if (x > table.x) throw std::invalid_argument("T_scan: x exceeds the table range");
    if (grid == 0) throw std::invalid_argument("T_scan: grid must be positive");
    auto window = t_window(x, D);
    if (!window) throw empty_range_error("T_scan: admissible z-window (x/D, x^2/D^2] is empty");
    auto [lo, hi] = *window;
    TScan scan;
    for (std::size_t j = 1; j <= grid; ++j) {
        double z = j == grid ? hi : lo * std::pow(hi / lo, static_cast<double>(j) / static_cast<double>(grid));
        double v = t_sum_unchecked(table, x, D, z);
        scan.z_grid.push_back(z);
        scan.values.push_back(v);
        if (j == 1 || v > scan.value) {
            scan.value = v;
            scan.z_at_max = z;
        }
    }
    return scan;
}

int chi3(u64 p) {
    switch (p % 3) {
        case 1: return 1;
        case 2: return -1;
        default: return 0;
    }
}

double local_density(u64 p, ThreeAdicConvention conv) {
    if (p == 3 && conv == ThreeAdicConvention::corrected) return 0.0;
    return static_cast<double>(rho(4 * p)) / (2.0 * static_cast<double>(p));
}

SingularSeries singular_series_H(u64 p_max, ThreeAdicConvention conv) {
    if (p_max < 5) throw std::domain_error("singular_series_H: p_max must be at least 5");
    SingularSeries out;
    out.p_max = p_max;
    out.convention = conv;

    // Local factors at 2 and 3: 2 * 1 (uniform) or 2 * 3/2 (corrected).
    const double head = conv == ThreeAdicConvention::uniform ? 2.0 : 3.0;
    KahanSum log_rearranged, log_raw, log_accel;
    for (std::uint32_t p : primes_up_to(p_max)) {
        const double pd = static_cast<double>(p);
        log_raw += std::log1p(-local_density(p, conv)) - std::log1p(-1.0 / pd);
        if (p < 5) continue;
        const double c = chi3(p);
        log_rearranged += std::log1p(-c / (pd - 1.0));
        log_accel += std::log1p(-c / (pd - 1.0)) - std::log1p(-c / pd);
    }
    out.H = head * std::exp(log_rearranged.value());
    out.H_raw = std::exp(log_raw.value());
    // prod_{all p} (1 - chi(p)/p) = 1/L(1, chi) = 3 sqrt(3)/pi; removing the
    // p = 2 factor (1 + 1/2) leaves 2 sqrt(3)/pi for p >= 5.
    out.limit = head * (2.0 * std::numbers::sqrt3 / std::numbers::pi) * std::exp(log_accel.value());
    out.tail_bound = std::abs(out.limit - out.H);
    return out;
}

std::vector<TheoremSum> theorem_convergence(const SieveTable& table, std::vector<u64> xs, double H) {
    std::sort(xs.begin(), xs.end());
    if (!xs.empty() && xs.back() > table.x)
        throw std::invalid_argument("theorem_sum: x exceeds the table range");
    std::vector<TheoremSum> out;
    KahanSum A, S;
    u64 n = 1;
    for (u64 x : xs) {
        for (; n <= x; ++n) {
            double a = table.a[n];
            if (a == 0.0) continue;
            A += a;
            if (table.prime_power_base[n]) S += a * table.lambda(n);
        }
        TheoremSum t;
        t.x = x;
        t.A = A.value();
        t.S = S.value();
        t.H = H;
        t.ratio = t.A > 0 ? t.S / (H * t.A) : 0.0;
        out.push_back(t);
    }
    return out;
}

TheoremSum theorem_sum(const SieveTable& table, u64 x, double H) {
    return theorem_convergence(table, {x}, H).front();
}

PrimePowerDiscrepancy prime_power_discrepancy(const SieveTable& table, u64 x) {
    if (x > table.x) throw std::invalid_argument("prime_power_discrepancy: x exceeds the table range");
    // l + m w <-> (r, s) = (2l - m, m): r^2 + 3 s^2 = 4 (l^2 - l m + m^2), r = s (mod 2).
    KahanSum direct;
    const u64 rmax = 2 * isqrt(x) + 1;
    for (u64 r = 2; r <= rmax && r * r <= 4 * x; ++r) {
        if (table.prime_power_base[r] == 0) continue;
        const double lr = table.lambda(r);
        const u64 smax = isqrt((4 * x - r * r) / 3);
        for (u64 s = r % 2; s <= smax; s += 2) {
            u64 n = (r * r + 3 * s * s) / 4;
            if (n > x) break;
            double ln = table.lambda(n);
            if (ln == 0.0) continue;
            direct += (s == 0 ? 1.0 : 2.0) * lr * ln;
        }
    }
    PrimePowerDiscrepancy out;
    out.direct = direct.value();
    out.S = theorem_sum(table, x, 1.0).S;
    out.difference = out.direct - out.S;
    return out;
}

}  // namespace eis
