#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Brute-force reference for toy primes. Shares no arithmetic with the
// Field/curve/isogeny code: plain 64-bit modular arithmetic, affine short
// Weierstrass group law, textbook Velu sums.

namespace csips::oracle {

inline constexpr uint64_t kMaxPrime = 1000000;

struct AffinePoint
{
    uint64_t x, y;
};

/// All affine solutions of y^2 = x^3 + e*x^2 + x over F_p.
std::vector<AffinePoint> montgomery_points(uint64_t p, uint64_t e);

/// #E(F_p) including infinity.
uint64_t count_points(uint64_t p, uint64_t e);

/// Every e with e^2 != 4 and #E_e(F_p) = p + 1, ascending.
std::vector<uint64_t> supersingular_coefficients(uint64_t p);

/// x-coordinates (Montgomery model) of the rational points of exact order ell.
std::vector<uint64_t> rational_torsion_x(uint64_t p, uint64_t e, uint64_t ell);

/// Codomain Montgomery coefficient of the isogeny with the rational kernel of
/// order ell (the ideal (ell, pi - 1)).
uint64_t rational_isogeny(uint64_t p, uint64_t e, uint64_t ell);

/// Action of J_i^{sign} on E_e, J_i = (l_i, pi - 1). The -1 case goes
/// through the quadratic twist: J^{-1} E_e = twist(J E_{-e}).
/// Throws std::invalid_argument when p exceeds kMaxPrime.
uint64_t action(uint64_t p, std::vector<uint32_t> const &small_primes, uint64_t e,
                size_t index, int sign);

}
