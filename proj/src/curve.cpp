#include "csips/curve.hpp"

#include <stdexcept>

#include "csips/rng.hpp"

namespace csips {

MontCurve base_curve(ParamSet const &)
{
    return {Fp(0)};
}

bool is_singular(Field const &F, MontCurve const &E)
{
    return F.sqr(E.e) == F.from_int(4);
}

Fp curve_rhs(Field const &F, MontCurve const &E, Fp const &x)
{
    // x * (x*(x + e) + 1)
    auto t = F.mul(x, F.add(x, E.e));
    return F.mul(x, F.add(t, F.one()));
}

bool proj_equal(Field const &F, XPoint const &P, XPoint const &Q)
{
    if (P.is_infinity() || Q.is_infinity())
        return P.is_infinity() && Q.is_infinity();
    Field G = F.with_counter(nullptr);
    return G.mul(P.X, Q.Z) == G.mul(Q.X, P.Z);
}

Fp affine_x(Field const &F, XPoint const &P)
{
    if (P.is_infinity())
        throw std::domain_error("point at infinity has no affine x");
    return F.mul(P.X, F.inv(P.Z));
}

LadderConstants ladder_constants(Field const &F, MontCurve const &E)
{
    return {F.add(E.e, F.from_int(2)), F.from_int(4)};
}

XPoint xdbl(Field const &F, XPoint const &P, LadderConstants const &k)
{
    auto t0 = F.sqr(F.sub(P.X, P.Z));
    auto t1 = F.sqr(F.add(P.X, P.Z));
    // affine curves have C24 = 4; quadruple by additions
    Fp z;
    if (k.c24 == Fp(4)) {
        z = F.add(t0, t0);
        z = F.add(z, z);
    } else {
        z = F.mul(k.c24, t0);
    }
    auto x = F.mul(z, t1);
    t1 = F.sub(t1, t0);
    z = F.add(z, F.mul(k.a24, t1));
    return {std::move(x), F.mul(z, t1)};
}

XPoint xadd(Field const &F, XPoint const &P, XPoint const &Q, XPoint const &diff)
{
    auto u = F.mul(F.sub(P.X, P.Z), F.add(Q.X, Q.Z));
    auto v = F.mul(F.add(P.X, P.Z), F.sub(Q.X, Q.Z));
    auto x = F.sqr(F.add(u, v));
    if (!diff.Z.is_one())
        x = F.mul(diff.Z, x);
    auto z = F.mul(diff.X, F.sqr(F.sub(u, v)));
    return {std::move(x), std::move(z)};
}

XPoint ladder(Field const &F, XPoint const &P, mpz_class const &k, LadderConstants const &c)
{
    if (k < 0)
        throw std::invalid_argument("negative ladder scalar");
    if (k == 0 || P.is_infinity())
        return XPoint::infinity();
    XPoint r0 = P, r1 = xdbl(F, P, c);
    auto top = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 2;
    for (long i = top; i >= 0; --i) {
        if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            r0 = xadd(F, r1, r0, P);
            r1 = xdbl(F, r1, c);
        } else {
            r1 = xadd(F, r0, r1, P);
            r0 = xdbl(F, r0, c);
        }
    }
    return r0;
}

XPoint ladder(Field const &F, XPoint const &P, mpz_class const &k, MontCurve const &E)
{
    return ladder(F, P, k, ladder_constants(F, E));
}

SampledPoint sample_point(Field const &F, MontCurve const &E, Rng &rng)
{
    for (;;) {
        auto x = F.random(rng);
        int w = F.legendre(curve_rhs(F, E, x));
        if (w != 0)
            return {XPoint::affine(std::move(x)), w};
    }
}

namespace {

bool order_divides_group(Field const &F, ParamSet const &ps, XPoint const &P, LadderConstants const &c)
{
    return ladder(F, P, ps.p + 1, c).is_infinity();
}

// Certificate: some point has order dividing p+1 and larger than 4*sqrt(p).
// Only E and its twist can then have p+1 points.
bool order_certificate(Field const &F, ParamSet const &ps, XPoint const &P, LadderConstants const &c)
{
    if (!order_divides_group(F, ps, P, c))
        return false;
    auto Q = xdbl(F, xdbl(F, P, c), c);
    mpz_class cofactor = (ps.p + 1) / 4;
    mpz_class bound = 16 * ps.p;  // compare d^2 > 16p
    mpz_class d = 1;
    for (auto l : ps.small_primes) {
        auto T = ladder(F, Q, cofactor / l, c);
        if (T.is_infinity())
            continue;
        d *= l;
        if (d * d > bound)
            return true;
    }
    return false;
}

} // namespace

bool validate_supersingular(ParamSet const &ps, MontCurve const &E, Rng &rng, bool strict)
{
    Field F = field_for(ps);
    if (is_singular(F, E))
        return false;
    auto c = ladder_constants(F, E);

    int seen[2] = {0, 0};
    constexpr int per_side = 4, max_tries = 64;
    for (int tries = 0; tries < max_tries && (seen[0] < per_side || seen[1] < per_side); ++tries) {
        auto s = sample_point(F, E, rng);
        if (!order_divides_group(F, ps, s.P, c))
            return false;
        ++seen[s.sign > 0 ? 0 : 1];
    }
    if (!strict)
        return true;
    for (int tries = 0; tries < max_tries; ++tries) {
        auto s = sample_point(F, E, rng);
        if (!order_divides_group(F, ps, s.P, c))
            return false;
        if (order_certificate(F, ps, s.P, c))
            return true;
    }
    return false;
}

}
