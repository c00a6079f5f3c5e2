#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csips/curve.hpp"

namespace csips {

class Rng;

/// Ideal class [J_1^a_1 ... J_n^a_n] as its exponent tuple, each |a_i| <= bound.
struct ExponentVector
{
    std::vector<int64_t> a;
    uint64_t bound = 0;

    static ExponentVector zero(uint32_t n, uint64_t bound = 0);
    static ExponentVector sample(uint32_t n, uint64_t bound, Rng &rng);

    size_t size() const { return a.size(); }
    bool is_zero() const;
    /// True iff every |a_i| <= b.
    bool within(uint64_t b) const;

    ExponentVector operator-() const;
    /// Component-wise sum; the result's bound is the sum of bounds.
    ExponentVector operator+(ExponentVector const &o) const;
    ExponentVector operator-(ExponentVector const &o) const;

    bool operator==(ExponentVector const &o) const { return a == o.a; }

    /// Fixed-width two's complement little-endian entries, concatenated.
    static size_t entry_width(uint64_t bound);
    std::vector<uint8_t> to_bytes() const;
    static ExponentVector from_bytes(std::span<uint8_t const> bytes, uint32_t n, uint64_t bound);
};

/// Projective Montgomery coefficient (A24 : C24) = (A + 2C : 4C).
struct ProjCurve
{
    LadderConstants k;

    static ProjCurve from(Field const &F, MontCurve const &E) { return {ladder_constants(F, E)}; }
    MontCurve affine(Field const &F) const;
};

/// Degree-ell isogeny with kernel <kernel> on the x-line. Maps the curve in
/// place and every point in `push`. The kernel must have exact order ell;
/// the check runs without touching the field's counter.
void velu_isogeny(Field const &F, ProjCurve &E, XPoint const &kernel, uint32_t ell,
                  std::span<XPoint> push);

struct IsogenyResult
{
    MontCurve codomain;
    std::vector<XPoint> images;
};

/// Affine convenience wrapper around the projective evaluation.
IsogenyResult velu_isogeny(Field const &F, MontCurve const &E, XPoint const &kernel,
                           uint32_t ell, std::vector<XPoint> push = {});

struct ActionOptions
{
    uint64_t max_iterations = 1000000;
};

/// [J_1^v_1 ... J_n^v_n] * E by sampling points and chaining odd-degree
/// isogenies. Field multiplications accrue to `counter` when given.
MontCurve group_action(ParamSet const &ps, MontCurve const &E, ExponentVector const &v,
                       Rng &rng, OpCounter *counter = nullptr, ActionOptions opt = {});

/// [v2][v1]E == [v1][v2]E
bool action_compose_check(ParamSet const &ps, ExponentVector const &v1,
                          ExponentVector const &v2, MontCurve const &E, Rng &rng);

/// Single-ideal action J_i^{sign} * E through the brute-force oracle.
/// Toy primes only (p <= 10^6).
MontCurve brute_force_action_oracle(ParamSet const &ps, MontCurve const &E, size_t index, int sign);

/// Two-party CSIDH exchange; returns both parties' shared curves.
struct KeyExchangeTranscript
{
    MontCurve alice_public, bob_public;
    MontCurve alice_shared, bob_shared;
};
KeyExchangeTranscript csidh_exchange(ParamSet const &ps, ExponentVector const &alice,
                                     ExponentVector const &bob, Rng &rng);

}
