#pragma once

// Roots of v^2 + 3 = 0 (mod d), their exponential sums, and the bijection
// between roots and primitive representations d = r^2 + r s + s^2.
//
// Root convention: a representation (r, s) maps to the root
//     v = (r - s) (r + s)^{-1}  (mod d),
// i.e. v (r + s) = r - s. Since 4d = (r - s)^2 + 3 (r + s)^2 this gives
// v^2 = -3 identically. The transposed relation v (r - s) = r + s does not
// (it produces v^2 = -1/3), see the regression tests.

#include <complex>
#include <optional>
#include <vector>

#include "eisenstein/numtheory.hpp"

namespace eis {

struct RootSet {
    u64 d = 1;
    std::vector<u64> roots;  // sorted, each in [0, d)

    std::size_t rho() const { return roots.size(); }
};

/// Roots modulo a prime. Throws std::invalid_argument if p is not prime.
RootSet roots_mod_prime(u64 p);

/// Roots modulo any d >= 1 by Hensel lifting and CRT. rho(1) = 1 (root 0).
RootSet roots_mod(u64 d);

/// rho(d) from the factorisation alone (no roots materialised).
u64 rho(u64 d);

/// rho(d) for every d <= n, indexed by d (entry 0 unused).
std::vector<std::uint8_t> rho_table(u64 n);

/// rho_h(d) = sum over roots v of e(v h / d).
std::complex<double> rho_h(i64 h, u64 d);
std::complex<double> rho_h(i64 h, const RootSet& roots);

struct FormRepresentation {
    u64 d = 1;
    i64 r = 1;
    i64 s = 0;

    friend bool operator==(const FormRepresentation&, const FormRepresentation&) = default;
};

/// Primitive representation with r > 0, s >= 0 (equivalently -r-s < r-s <= r+s)
/// and gcd(r, s) = 1, d = r^2 + r s + s^2.
bool is_valid_representation(const FormRepresentation& rep);

/// All primitive representations of d in that sector, sorted by s.
std::vector<FormRepresentation> representations(u64 d);

/// ((r - s) (r + s)^{-1}) mod d. Throws std::invalid_argument on an invalid rep.
u64 rep_to_root(const FormRepresentation& rep);

/// Inverse of rep_to_root. d must be odd and v a root; throws
/// std::invalid_argument otherwise and not_found_error if no representation
/// exists. Uses exhaustive search for d <= 1e6 and lattice reduction above.
FormRepresentation root_to_rep(u64 d, u64 v);
FormRepresentation root_to_rep_exhaustive(u64 d, u64 v);
FormRepresentation root_to_rep_lattice(u64 d, u64 v);

inline constexpr u64 kExhaustiveRepLimit = 1'000'000;

/// Fractional-part identity
///   v/d = -4 * inv(r - s mod r + s) / (r + s) + (r - s) / (d (r + s))  (mod 1)
/// evaluated for rep and its root. Returns the circular distance between the
/// two sides, or nullopt when r - s is not invertible mod r + s (r, s both odd).
std::optional<double> fractional_identity_gap(const FormRepresentation& rep);

struct SpacingResult {
    double min_gap = 0.0;   // minimum circular distance between distinct points
    double scaled = 0.0;    // min_gap * D
    std::size_t points = 0;
};

/// Points v/d mod 1 over odd d in (4D, 9D] and roots v of d. nullopt when
/// fewer than two points exist.
std::optional<SpacingResult> spacing_min_gap(u64 D);

}  // namespace eis
