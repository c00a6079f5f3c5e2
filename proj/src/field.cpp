#include "csips/field.hpp"

#include <cassert>
#include <stdexcept>

#include "csips/rng.hpp"

namespace csips {

Field::Field(mpz_class p, OpCounter *counter) : _counter(counter)
{
    if (p < 3 || mpz_class(p % 4) != 3)
        throw std::invalid_argument("field modulus must be an odd prime = 3 mod 4");
    auto m = std::make_shared<Modulus>();
    m->p = std::move(p);
    m->legendre_exp = (m->p - 1) / 2;
    m->sqrt_exp = (m->p + 1) / 4;
    m->inv_exp = m->p - 2;
    _mod = std::move(m);
}

Fp Field::from(mpz_class const &v) const
{
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), _mod->p.get_mpz_t());
    return Fp(std::move(r));
}

Fp Field::add(Fp const &a, Fp const &b) const
{
    mpz_class r = a.value() + b.value();
    if (r >= _mod->p)
        r -= _mod->p;
    return Fp(std::move(r));
}

Fp Field::sub(Fp const &a, Fp const &b) const
{
    mpz_class r = a.value() - b.value();
    if (r < 0)
        r += _mod->p;
    return Fp(std::move(r));
}

Fp Field::neg(Fp const &a) const
{
    if (a.is_zero())
        return a;
    return Fp(_mod->p - a.value());
}

Fp Field::mul(Fp const &a, Fp const &b) const
{
    assert(a.value() < _mod->p && b.value() < _mod->p);
    if (_counter)
        ++_counter->mul;
    mpz_class r = a.value() * b.value();
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), _mod->p.get_mpz_t());
    return Fp(std::move(r));
}

Fp Field::sqr(Fp const &a) const
{
    assert(a.value() < _mod->p);
    if (_counter)
        ++_counter->sqr;
    mpz_class r = a.value() * a.value();
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), _mod->p.get_mpz_t());
    return Fp(std::move(r));
}

Fp Field::pow(Fp const &a, mpz_class const &e) const
{
    assert(e >= 0);
    Fp r = one();
    for (auto i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        r = sqr(r);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            r = mul(r, a);
    }
    return r;
}

Fp Field::inv(Fp const &a) const
{
    if (a.is_zero())
        throw std::domain_error("division by zero in F_p");
    return pow(a, _mod->inv_exp);
}

int Field::legendre(Fp const &a) const
{
    if (a.is_zero())
        return 0;
    return pow(a, _mod->legendre_exp).is_one() ? 1 : -1;
}

Fp Field::sqrt(Fp const &a) const
{
    Fp r = pow(a, _mod->sqrt_exp);
    if (sqr(r) != a)
        throw std::domain_error("square root of a non-residue");
    if (mpz_odd_p(r.value().get_mpz_t()))
        r = neg(r);
    return r;
}

Fp Field::random(Rng &rng) const
{
    return Fp(rng.below(_mod->p));
}

std::vector<uint8_t> Field::encode(Fp const &a, size_t width) const
{
    std::vector<uint8_t> out(width, 0);
    if (a.is_zero())
        return out;
    if ((mpz_sizeinbase(a.value().get_mpz_t(), 2) + 7) / 8 > width)
        throw std::invalid_argument("field element wider than the encoding");
    size_t count = 0;
    mpz_export(out.data(), &count, -1, 1, -1, 0, a.value().get_mpz_t());
    return out;
}

Fp Field::decode(std::span<uint8_t const> bytes) const
{
    mpz_class v;
    if (!bytes.empty())
        mpz_import(v.get_mpz_t(), bytes.size(), -1, 1, -1, 0, bytes.data());
    if (v >= _mod->p)
        throw std::invalid_argument("encoded field element is not reduced");
    return Fp(std::move(v));
}

}
