#include <doctest.h>

#include "csips/field.hpp"
#include "csips/params.hpp"
#include "csips/rng.hpp"

using namespace csips;

namespace {

Field toy_field(OpCounter *c = nullptr)
{
    return Field(419, c);
}

// x is a square mod 419 iff some y has y*y = x (exhaustive)
bool is_square_419(long x)
{
    for (long y = 0; y < 419; ++y)
        if ((y * y) % 419 == x % 419)
            return true;
    return false;
}

} // namespace

TEST_CASE("small identities mod 419")
{
    auto F = toy_field();
    CHECK(F.mul(F.from_int(2), F.from_int(210)) == F.one());
    CHECK(F.inv(F.from_int(2)) == F.from_int(210));
    CHECK(F.add(F.from_int(418), F.one()) == F.zero());
    CHECK(F.sub(F.zero(), F.one()) == F.from_int(418));
    CHECK(F.neg(F.zero()) == F.zero());
    CHECK(F.from_int(-1) == F.from_int(418));
    CHECK(F.from_int(419 * 3 + 5) == F.from_int(5));
    CHECK_THROWS_AS(F.inv(F.zero()), std::domain_error);
}

TEST_CASE("legendre symbol")
{
    auto F = toy_field();
    CHECK(F.legendre(F.from_int(4)) == 1);
    CHECK(F.legendre(F.zero()) == 0);
    long g = 2;
    while (is_square_419(g))
        ++g;
    CHECK(F.legendre(F.from_int(g)) == -1);
    for (long x = 1; x < 419; ++x)
        CHECK(F.legendre(F.from_int(x)) == (is_square_419(x) ? 1 : -1));
}

TEST_CASE("legendre is multiplicative")
{
    auto F = toy_field();
    auto rng = Rng::seeded(11);
    for (int t = 0; t < 1000; ++t) {
        auto a = F.from_int(1 + static_cast<long>(rng.below(418)));
        auto b = F.from_int(1 + static_cast<long>(rng.below(418)));
        CHECK(F.legendre(F.mul(a, b)) == F.legendre(a) * F.legendre(b));
    }
}

TEST_CASE("sqrt: exhaustive over F_419")
{
    auto F = toy_field();
    CHECK(F.sqrt(F.from_int(4)) == F.from_int(2));
    CHECK(F.sqrt(F.zero()) == F.zero());
    for (long x = 0; x < 419; ++x) {
        auto a = F.from_int(x);
        if (is_square_419(x)) {
            auto r = F.sqrt(a);
            CHECK(F.sqr(r) == a);
            CHECK(r.value() % 2 == 0);
        } else {
            CHECK_THROWS_AS(F.sqrt(a), std::domain_error);
        }
    }
}

TEST_CASE("ring axioms and inverses")
{
    auto rng = Rng::seeded(12);
    for (auto const &p : {mpz_class(419), paramset_csidh512(16, 8, 8, 2).p}) {
        Field F(p);
        for (int t = 0; t < 1000; ++t) {
            auto a = F.random(rng), b = F.random(rng), c = F.random(rng);
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.sqr(a) == F.mul(a, a));
            CHECK(F.add(a, F.neg(a)) == F.zero());
            if (!a.is_zero())
                CHECK(F.mul(a, F.inv(a)) == F.one());
            CHECK(a.value() >= 0);
            CHECK(a.value() < p);
        }
    }
}

TEST_CASE("pow against repeated multiplication")
{
    auto F = toy_field();
    auto rng = Rng::seeded(13);
    for (int t = 0; t < 100; ++t) {
        auto a = F.random(rng);
        long e = static_cast<long>(rng.below(50));
        auto want = F.one();
        for (long i = 0; i < e; ++i)
            want = F.mul(want, a);
        CHECK(F.pow(a, e) == want);
    }
}

TEST_CASE("counter: mul and sqr increment, add does not")
{
    OpCounter c;
    auto F = toy_field(&c);
    auto a = F.from_int(5), b = F.from_int(7);
    F.add(a, b);
    F.sub(a, b);
    CHECK(c.mults() == 0);
    F.mul(a, b);
    CHECK(c.mul == 1);
    F.sqr(a);
    CHECK(c.sqr == 1);
    CHECK(c.mults() == 2);

    // a copy with another counter leaves the first alone
    OpCounter d;
    auto G = F.with_counter(&d);
    G.mul(a, b);
    CHECK(c.mults() == 2);
    CHECK(d.mults() == 1);
    c += d;
    CHECK(c.mults() == 3);
    c.reset();
    CHECK(c.mults() == 0);

    // inversion is a counted exponentiation
    F.inv(a);
    CHECK(c.mults() > 0);
}

TEST_CASE("encoding round trip and range check")
{
    auto ps = paramset_csidh512(16, 8, 8, 2);
    Field F(ps.p);
    auto rng = Rng::seeded(14);
    size_t w = field_bytes(ps.log_p_bits);
    CHECK(w == 64);
    for (int t = 0; t < 200; ++t) {
        auto a = F.random(rng);
        auto bytes = F.encode(a, w);
        CHECK(bytes.size() == w);
        CHECK(F.decode(bytes) == a);
    }
    // little endian
    auto one = F.encode(F.one(), w);
    CHECK(one[0] == 1);
    // p itself is not canonical
    mpz_class pv = ps.p;
    std::vector<uint8_t> raw(w, 0);
    for (size_t i = 0; i < w; ++i) {
        raw[i] = static_cast<uint8_t>(mpz_class(pv & 0xff).get_ui());
        pv >>= 8;
    }
    CHECK_THROWS_AS(F.decode(raw), std::invalid_argument);
    CHECK_THROWS(toy_field().encode(Fp(300), 1));
}
