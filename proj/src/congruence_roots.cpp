#include "eisenstein/congruence_roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eisenstein/parallel.hpp"

namespace eis {

namespace {

std::vector<u64> roots_mod_prime_power(u64 p, int k) {
    if (p == 2) {
        if (k == 1) return {1};
        if (k == 2) return {1, 3};
        return {};
    }
    if (p == 3) return k == 1 ? std::vector<u64>{0} : std::vector<u64>{};
    if (p % 3 == 2) return {};

    u64 s = *sqrt_mod_prime(p - 3, p);
    std::vector<u64> roots = {s, p - s};
    u64 modulus = p;
    for (int j = 1; j < k; ++j) {
        u64 next = modulus * p;
        for (u64& v : roots) {
            // Newton step: v <- v - (v^2 + 3) / (2v)  (mod p^{j+1})
            u64 f = (mulmod(v, v, next) + 3) % next;
            u64 inv = *inverse_mod(mulmod(2, v, next), next);
            v = (v + next - mulmod(f, inv, next)) % next;
        }
        modulus = next;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

u64 rho_prime_power(u64 p, int k) {
    if (p == 2) return k == 1 ? 1 : (k == 2 ? 2 : 0);
    if (p == 3) return k == 1 ? 1 : 0;
    return p % 3 == 1 ? 2 : 0;
}

i128 form_value(i128 r, i128 s) { return r * r + r * s + s * s; }

}  // namespace

RootSet roots_mod_prime(u64 p) {
    if (!is_prime_u64(p))
        throw std::invalid_argument("roots_mod_prime: " + std::to_string(p) + " is not prime");
    return RootSet{p, roots_mod_prime_power(p, 1)};
}

RootSet roots_mod(u64 d) {
    if (d == 0) throw std::domain_error("roots_mod: modulus must be positive");
    std::vector<u64> acc = {0};
    u64 modulus = 1;
    for (auto [p, k] : factor_u64(d)) {
        u64 pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        auto local = roots_mod_prime_power(p, k);
        if (local.empty()) return RootSet{d, {}};
        // CRT: x = a (mod modulus), x = b (mod pk)
        u64 inv = *inverse_mod(modulus % pk, pk);
        u64 combined_mod = modulus * pk;
        std::vector<u64> next;
        next.reserve(acc.size() * local.size());
        for (u64 a : acc) {
            for (u64 b : local) {
                u64 diff = (b + pk - a % pk) % pk;
                u64 t = mulmod(diff, inv, pk);
                next.push_back(static_cast<u64>((static_cast<u128>(modulus) * t + a) % combined_mod));
            }
        }
        acc = std::move(next);
        modulus = combined_mod;
    }
    std::sort(acc.begin(), acc.end());
    return RootSet{d, std::move(acc)};
}

u64 rho(u64 d) {
    if (d == 0) throw std::domain_error("rho: modulus must be positive");
    u64 r = 1;
    for (auto [p, k] : factor_u64(d)) {
        r *= rho_prime_power(p, k);
        if (r == 0) break;
    }
    return r;
}

std::vector<std::uint8_t> rho_table(u64 n) {
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (u64 i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (u64 j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    std::vector<std::uint8_t> out(n + 1, 0);
    if (n >= 1) out[1] = 1;
    for (u64 d = 2; d <= n; ++d) {
        u64 p = spf[d], m = d;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        u64 v = rho_prime_power(p, k) * out[m];
        if (v > 255) throw std::overflow_error("rho_table: rho exceeds 255");
        out[d] = static_cast<std::uint8_t>(v);
    }
    return out;
}

std::complex<double> rho_h(i64 h, const RootSet& roots) {
    const u64 d = roots.d;
    const u64 hm = mod_floor(h, d);
    std::complex<double> sum{0.0, 0.0};
    for (u64 v : roots.roots) {
        u64 k = mulmod(v, hm, d);
        double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(d));
        sum += std::polar(1.0, angle);
    }
    return sum;
}

std::complex<double> rho_h(i64 h, u64 d) { return rho_h(h, roots_mod(d)); }

bool is_valid_representation(const FormRepresentation& rep) {
    if (rep.r <= 0 || rep.s < 0) return false;
    if (gcd_i64(rep.r, rep.s) != 1) return false;
    return form_value(rep.r, rep.s) == static_cast<i128>(rep.d);
}

std::vector<FormRepresentation> representations(u64 d) {
    std::vector<FormRepresentation> reps;
    // r = (-s + sqrt(4d - 3 s^2)) / 2
    for (u64 s = 0; static_cast<u128>(3) * s * s < static_cast<u128>(4) * d; ++s) {
        u128 disc = static_cast<u128>(4) * d - static_cast<u128>(3) * s * s;
        u64 root = isqrt(static_cast<u64>(disc));
        if (static_cast<u128>(root) * root != disc) continue;
        if (root <= s || (root - s) % 2 != 0) continue;
        FormRepresentation rep{d, static_cast<i64>((root - s) / 2), static_cast<i64>(s)};
        if (is_valid_representation(rep)) reps.push_back(rep);
    }
    return reps;
}

u64 rep_to_root(const FormRepresentation& rep) {
    if (!is_valid_representation(rep))
        throw std::invalid_argument("rep_to_root: not a primitive representation with r > 0, s >= 0");
    const u64 d = rep.d;
    auto inv = inverse_mod(mod_floor(rep.r + rep.s, d), d);
    if (!inv) throw std::invalid_argument("rep_to_root: r + s not invertible modulo d");
    return mulmod(mod_floor(rep.r - rep.s, d), *inv, d);
}

namespace {

void check_root(u64 d, u64 v) {
    if (d == 0 || d % 2 == 0) throw std::invalid_argument("root_to_rep: modulus must be odd");
    if (v >= d || (mulmod(v, v, d) + 3) % d != 0)
        throw std::invalid_argument("root_to_rep: " + std::to_string(v) + " is not a root modulo " +
                                    std::to_string(d));
}

}  // namespace

FormRepresentation root_to_rep_exhaustive(u64 d, u64 v) {
    check_root(d, v);
    for (const auto& rep : representations(d))
        if (rep_to_root(rep) == v) return rep;
    throw not_found_error("root_to_rep: no representation maps to this root");
}

FormRepresentation root_to_rep_lattice(u64 d, u64 v) {
    check_root(d, v);
    if (d == 1) return FormRepresentation{1, 1, 0};
    // Lattice {(r, s) : r (1 - v) = s (1 + v) mod d}; 1 - v is a unit mod odd d
    // because v = 1 would force d | 4.
    u64 inv = *inverse_mod((1 + d - v) % d, d);
    u64 w = mulmod((v + 1) % d, inv, d);

    struct Vec {
        i128 r, s;
    };
    auto q2 = [](const Vec& u) { return 2 * (u.r * u.r + u.r * u.s + u.s * u.s); };
    auto b2 = [](const Vec& u, const Vec& t) { return 2 * u.r * t.r + u.r * t.s + u.s * t.r + 2 * u.s * t.s; };
    auto round_div = [](i128 num, i128 den) {
        i128 q = num / den, rem = num - q * den;
        if (2 * (rem < 0 ? -rem : rem) > den) q += (num < 0 ? -1 : 1);
        return q;
    };

    Vec x{static_cast<i128>(d), 0}, y{static_cast<i128>(w), 1};
    for (;;) {
        if (q2(y) < q2(x)) std::swap(x, y);
        i128 mu = round_div(b2(x, y), q2(x));
        if (mu == 0) break;
        y = Vec{y.r - mu * x.r, y.s - mu * x.s};
    }

    const i128 target = static_cast<i128>(d);
    std::vector<Vec> candidates = {x, y, Vec{x.r + y.r, x.s + y.s}, Vec{x.r - y.r, x.s - y.s}};
    for (Vec c : candidates) {
        if (form_value(c.r, c.s) != target) continue;
        for (int k = 0; k < 6; ++k) {
            // (r, s) -> (-s, r + s) preserves r^2 + r s + s^2 and has order 6.
            c = Vec{-c.s, c.r + c.s};
            FormRepresentation rep{d, static_cast<i64>(c.r), static_cast<i64>(c.s)};
            if (is_valid_representation(rep) && rep_to_root(rep) == v) return rep;
        }
    }
    throw not_found_error("root_to_rep: lattice reduction found no representation");
}

FormRepresentation root_to_rep(u64 d, u64 v) {
    return d <= kExhaustiveRepLimit ? root_to_rep_exhaustive(d, v) : root_to_rep_lattice(d, v);
}

std::optional<double> fractional_identity_gap(const FormRepresentation& rep) {
    const u64 v = rep_to_root(rep);
    const i64 x = rep.r - rep.s;
    const u64 y = static_cast<u64>(rep.r + rep.s);
    auto inv = inverse_mod(mod_floor(x, y), y);
    if (!inv) return std::nullopt;
    const u64 k = (y - mulmod(4 % y, *inv, y)) % y;
    const double d = static_cast<double>(rep.d);
    double rhs = static_cast<double>(k) / static_cast<double>(y) +
                 static_cast<double>(x) / (d * static_cast<double>(y));
    double lhs = static_cast<double>(v) / d;
    double diff = lhs - rhs;
    diff -= std::floor(diff);
    return std::min(diff, 1.0 - diff);
}

std::optional<SpacingResult> spacing_min_gap(u64 D) {
    struct Point {
        u64 v, d;
    };
    const u64 lo = 4 * D + 1, hi = 9 * D;
    const unsigned workers = thread_count();
    std::vector<std::vector<Point>> chunks(workers);
    parallel_chunks(
        lo, hi + 1,
        [&](unsigned w, std::size_t a, std::size_t b) {
            for (u64 d = a; d < b; ++d) {
                if (d % 2 == 0) continue;
                for (u64 v : roots_mod(d).roots) chunks[w].push_back({v, d});
            }
        },
        workers);
    std::vector<Point> points;
    for (auto& c : chunks) points.insert(points.end(), c.begin(), c.end());
    if (points.size() < 2) return std::nullopt;

    std::sort(points.begin(), points.end(), [](const Point& l, const Point& r) {
        return static_cast<u128>(l.v) * r.d < static_cast<u128>(r.v) * l.d;
    });
    auto gap = [](const Point& l, const Point& r) {
        i128 num = static_cast<i128>(r.v) * l.d - static_cast<i128>(l.v) * r.d;
        return static_cast<double>(num) / (static_cast<double>(l.d) * static_cast<double>(r.d));
    };
    double best = 1.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) best = std::min(best, gap(points[i], points[i + 1]));
    const Point& first = points.front();
    const Point& last = points.back();
    i128 wrap = static_cast<i128>(last.d - last.v) * first.d + static_cast<i128>(first.v) * last.d;
    best = std::min(best, static_cast<double>(wrap) / (static_cast<double>(last.d) * static_cast<double>(first.d)));
    return SpacingResult{best, best * static_cast<double>(D), points.size()};
}

}  // namespace eis
