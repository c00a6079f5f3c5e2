#include <doctest.h>

#include <cmath>
#include <set>

#include "csips/curve.hpp"
#include "csips/oracle.hpp"
#include "csips/rng.hpp"

using namespace csips;

namespace {

ParamSet const toy = paramset_toy();

std::set<long> squares_419()
{
    std::set<long> s;
    for (long y = 0; y < 419; ++y)
        s.insert(y * y % 419);
    return s;
}

long rhs_419(long x, long e)
{
    return (x * x % 419 * x + e * x % 419 * x + x) % 419;
}

} // namespace

TEST_CASE("base curve")
{
    CHECK(base_curve(toy).e.is_zero());
    CHECK(base_curve(paramset_csidh512(16, 8, 8, 2)).e.is_zero());
    auto rng = Rng::seeded(20);
    CHECK(validate_supersingular(toy, base_curve(toy), rng, true));
}

TEST_CASE("ladder: trivial scalars")
{
    Field F = field_for(toy);
    auto E0 = base_curve(toy);
    auto rng = Rng::seeded(21);
    for (int t = 0; t < 50; ++t) {
        auto P = sample_point(F, E0, rng).P;
        CHECK(proj_equal(F, ladder(F, P, 1, E0), P));
        CHECK(ladder(F, P, 0, E0).is_infinity());
        CHECK(proj_equal(F, ladder(F, P, 2, E0), xdbl(F, P, ladder_constants(F, E0))));
    }
    CHECK(ladder(F, XPoint::infinity(), 5, E0).is_infinity());
    CHECK_THROWS(ladder(F, XPoint::affine(F.one()), -1, E0));
}

TEST_CASE("ladder: [420]P is infinity for every x over F_419")
{
    // every x lifts to E0 or its twist, both of order 420
    Field F = field_for(toy);
    auto E0 = base_curve(toy);
    for (long x = 0; x < 419; ++x)
        CHECK(ladder(F, XPoint::affine(F.from_int(x)), 420, E0).is_infinity());
    // and the same on another supersingular curve
    for (auto e : oracle::supersingular_coefficients(419)) {
        MontCurve E{F.from_int(static_cast<long>(e))};
        for (long x = 1; x < 419; x += 37)
            CHECK(ladder(F, XPoint::affine(F.from_int(x)), 420, E).is_infinity());
    }
}

TEST_CASE("ladder: order-3 point found by the 3-division polynomial")
{
    // psi_3 = 3x^4 + 4e x^3 + 6x^2 - 1 with e = 0, scanned exhaustively
    Field F = field_for(toy);
    auto E0 = base_curve(toy);
    auto sq = squares_419();
    int found = 0;
    for (long x = 0; x < 419; ++x) {
        long psi = (3 * x % 419 * x % 419 * x % 419 * x + 6 * x % 419 * x + 418) % 419;
        if (psi != 0 || !sq.count(rhs_419(x, 0)))
            continue;
        ++found;
        auto P = XPoint::affine(F.from_int(x));
        CHECK(ladder(F, P, 3, E0).is_infinity());
        CHECK_FALSE(ladder(F, P, 1, E0).is_infinity());
    }
    CHECK(found >= 1);
}

TEST_CASE("ladder linearity on small scalars")
{
    Field F = field_for(toy);
    auto E0 = base_curve(toy);
    auto rng = Rng::seeded(22);
    for (int t = 0; t < 30; ++t) {
        auto P = sample_point(F, E0, rng).P;
        for (long a = 2; a < 12; ++a)
            for (long b = 1; b < a; ++b) {
                auto Pa = ladder(F, P, a, E0), Pb = ladder(F, P, b, E0), Pd = ladder(F, P, a - b, E0);
                auto sum = ladder(F, P, a + b, E0);
                // differential addition needs x(P - Q) outside {0, infinity}
                if (Pa.is_infinity() || Pb.is_infinity() || Pd.is_infinity() || Pd.X.is_zero())
                    continue;
                CHECK(proj_equal(F, xadd(F, Pa, Pb, Pd), sum));
            }
    }
}

TEST_CASE("projective equality is an equivalence")
{
    Field F = field_for(toy);
    auto E0 = base_curve(toy);
    auto rng = Rng::seeded(23);
    for (int t = 0; t < 100; ++t) {
        auto P = sample_point(F, E0, rng).P;
        auto s = F.from_int(1 + static_cast<long>(rng.below(418)));
        auto u = F.from_int(1 + static_cast<long>(rng.below(418)));
        XPoint Q{F.mul(P.X, s), F.mul(P.Z, s)}, R{F.mul(P.X, u), F.mul(P.Z, u)};
        CHECK(proj_equal(F, P, P));
        CHECK(proj_equal(F, P, Q) == proj_equal(F, Q, P));
        CHECK(proj_equal(F, P, Q));
        CHECK(proj_equal(F, Q, R));
        CHECK(proj_equal(F, P, R));
    }
    CHECK(proj_equal(F, XPoint::infinity(), XPoint{F.from_int(5), F.zero()}));
    CHECK_FALSE(proj_equal(F, XPoint::infinity(), XPoint::affine(F.one())));
}

TEST_CASE("sample_point: sign fraction matches the exhaustive count")
{
    Field F = field_for(toy);
    auto E0 = base_curve(toy);
    auto sq = squares_419();
    long plus = 0, nonzero = 0;
    for (long x = 0; x < 419; ++x) {
        long r = rhs_419(x, 0);
        if (r == 0)
            continue;
        ++nonzero;
        plus += sq.count(r);
    }
    double pexp = static_cast<double>(plus) / nonzero;

    auto rng = Rng::seeded(24);
    constexpr int N = 10000;
    int got = 0;
    for (int t = 0; t < N; ++t) {
        auto s = sample_point(F, E0, rng);
        CHECK(!curve_rhs(F, E0, s.P.X).is_zero());
        CHECK(s.sign == F.legendre(curve_rhs(F, E0, s.P.X)));
        got += s.sign > 0;
    }
    double sigma = std::sqrt(N * pexp * (1 - pexp));
    CHECK(std::abs(got - N * pexp) <= 5 * sigma);
}

TEST_CASE("validate_supersingular")
{
    auto rng = Rng::seeded(25);
    Field F = field_for(toy);
    // independent point count: y^2 = x^3 + x^2 + x over F_419
    auto sq = squares_419();
    long count = 1;
    for (long x = 0; x < 419; ++x) {
        long r = rhs_419(x, 1);
        count += r == 0 ? 1 : (sq.count(r) ? 2 : 0);
    }
    REQUIRE(count != 420);
    CHECK_FALSE(validate_supersingular(toy, {F.from_int(1)}, rng));
    CHECK_FALSE(validate_supersingular(toy, {F.from_int(1)}, rng, true));
    CHECK_FALSE(validate_supersingular(toy, {F.from_int(2)}, rng));
    CHECK_FALSE(validate_supersingular(toy, {F.from_int(417)}, rng));

    auto ss = oracle::supersingular_coefficients(419);
    std::set<uint64_t> sset(ss.begin(), ss.end());
    for (uint64_t e = 0; e < 419; ++e) {
        MontCurve E{F.from_int(static_cast<long>(e))};
        CHECK(validate_supersingular(toy, E, rng, true) == (sset.count(e) == 1));
    }
}

TEST_CASE("validate_supersingular: CSIDH-512 base curve")
{
    auto ps = paramset_csidh512(16, 8, 8, 2);
    auto rng = Rng::seeded(26);
    CHECK(validate_supersingular(ps, base_curve(ps), rng, true));
    Field F = field_for(ps);
    CHECK_FALSE(validate_supersingular(ps, {F.from_int(1)}, rng, true));
}
