#pragma once

#include <gmpxx.h>

#include "csips/field.hpp"
#include "csips/params.hpp"

namespace csips {

class Rng;

/// Montgomery curve y^2 = x^3 + e*x^2 + x over F_p.
struct MontCurve
{
    Fp e;
    bool operator==(MontCurve const &o) const { return e == o.e; }
    bool operator!=(MontCurve const &o) const { return e != o.e; }
};

/// Point on the x-line in projective coordinates (X : Z); Z = 0 is infinity.
struct XPoint
{
    Fp X, Z;

    static XPoint infinity() { return {Fp(1), Fp(0)}; }
    static XPoint affine(Fp x) { return {std::move(x), Fp(1)}; }
    bool is_infinity() const { return Z.is_zero(); }
};

/// Projective curve constants (A + 2C : 4C) used by doubling; an affine
/// curve has (e + 2 : 4).
struct LadderConstants
{
    Fp a24, c24;
};

inline Field field_for(ParamSet const &ps, OpCounter *counter = nullptr)
{
    return Field(ps.p, counter);
}

MontCurve base_curve(ParamSet const &ps);

bool is_singular(Field const &F, MontCurve const &E);

/// x^3 + e*x^2 + x
Fp curve_rhs(Field const &F, MontCurve const &E, Fp const &x);

/// X1*Z2 == X2*Z1, with all points at infinity equal.
bool proj_equal(Field const &F, XPoint const &P, XPoint const &Q);

Fp affine_x(Field const &F, XPoint const &P);

LadderConstants ladder_constants(Field const &F, MontCurve const &E);

XPoint xdbl(Field const &F, XPoint const &P, LadderConstants const &k);
/// x(P + Q) from x(P), x(Q) and x(P - Q).
XPoint xadd(Field const &F, XPoint const &P, XPoint const &Q, XPoint const &diff);

/// x([k]P) by the Montgomery ladder; k >= 0.
XPoint ladder(Field const &F, XPoint const &P, mpz_class const &k, LadderConstants const &c);
XPoint ladder(Field const &F, XPoint const &P, mpz_class const &k, MontCurve const &E);

struct SampledPoint
{
    XPoint P;
    int sign;  // +1: on the curve, -1: on the quadratic twist
};

/// Uniform x with non-zero right-hand side; sign is its Legendre symbol.
SampledPoint sample_point(Field const &F, MontCurve const &E, Rng &rng);

/// Probabilistic check that #E(F_p) = p + 1. Strict mode additionally
/// requires a point whose order divides p + 1 and exceeds 4*sqrt(p).
bool validate_supersingular(ParamSet const &ps, MontCurve const &E, Rng &rng, bool strict = false);

}
