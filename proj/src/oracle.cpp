#include "csips/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace csips::oracle {

namespace {

struct Mod
{
    uint64_t p;

    uint64_t red(uint64_t a) const { return a % p; }
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
    uint64_t mul(uint64_t a, uint64_t b) const
    {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const
    {
        uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const
    {
        if (a % p == 0)
            throw std::domain_error("oracle: inverse of zero");
        return pow(a, p - 2);
    }
    bool is_square(uint64_t a) const { return a % p == 0 || pow(a, (p - 1) / 2) == 1; }
    uint64_t sqrt(uint64_t a) const { return pow(a, (p + 1) / 4); }
};

// Short Weierstrass y^2 = x^3 + a x + b, affine; nullopt is infinity.
using WPoint = std::optional<AffinePoint>;

struct Weierstrass
{
    Mod m;
    uint64_t a, b;

    WPoint add(WPoint const &P, WPoint const &Q) const
    {
        if (!P)
            return Q;
        if (!Q)
            return P;
        uint64_t lambda;
        if (P->x == Q->x) {
            if (m.add(P->y, Q->y) == 0)
                return std::nullopt;
            lambda = m.mul(m.add(m.mul(3, m.mul(P->x, P->x)), a), m.inv(m.mul(2, P->y)));
        } else {
            lambda = m.mul(m.sub(Q->y, P->y), m.inv(m.sub(Q->x, P->x)));
        }
        uint64_t x3 = m.sub(m.sub(m.mul(lambda, lambda), P->x), Q->x);
        uint64_t y3 = m.sub(m.mul(lambda, m.sub(P->x, x3)), P->y);
        return AffinePoint{x3, y3};
    }

    WPoint mul(WPoint P, uint64_t k) const
    {
        WPoint R;
        while (k) {
            if (k & 1)
                R = add(R, P);
            P = add(P, P);
            k >>= 1;
        }
        return R;
    }
};

void guard(uint64_t p)
{
    if (p > kMaxPrime)
        throw std::invalid_argument("oracle: prime too large for enumeration");
    if (p % 4 != 3)
        throw std::invalid_argument("oracle: prime must be 3 mod 4");
}

// Montgomery e -> short Weierstrass via x = X - e/3.
Weierstrass to_weierstrass(Mod const &m, uint64_t e)
{
    uint64_t i3 = m.inv(3), i27 = m.inv(27);
    uint64_t e2 = m.mul(e, e);
    uint64_t a = m.sub(1, m.mul(e2, i3));
    uint64_t b = m.mul(m.mul(e, m.sub(m.mul(2, e2), 9)), i27);
    return {m, a, b};
}

// Unique Montgomery coefficient of an F_p-isomorphism class given in short
// Weierstrass form: root alpha of the cubic, u^2 = 3 alpha^2 + a with u a
// square, e = 3 alpha / u.
uint64_t to_montgomery(Weierstrass const &W)
{
    Mod const &m = W.m;
    std::set<uint64_t> found;
    for (uint64_t alpha = 0; alpha < m.p; ++alpha) {
        uint64_t cubic = m.add(m.add(m.mul(alpha, m.mul(alpha, alpha)), m.mul(W.a, alpha)), W.b);
        if (cubic != 0)
            continue;
        uint64_t s = m.add(m.mul(3, m.mul(alpha, alpha)), W.a);
        if (s == 0 || !m.is_square(s))
            continue;
        uint64_t u = m.sqrt(s);
        if (!m.is_square(u))
            u = m.sub(0, u);
        found.insert(m.mul(m.mul(3, alpha), m.inv(u)));
    }
    if (found.size() != 1)
        throw std::logic_error("oracle: codomain has no unique Montgomery model");
    return *found.begin();
}

WPoint order_ell_point(Weierstrass const &W, uint64_t e, uint64_t ell)
{
    Mod const &m = W.m;
    uint64_t shift = m.mul(e, m.inv(3));
    uint64_t order = m.p + 1;
    if (order % ell != 0 || (order / ell) % ell == 0)
        throw std::invalid_argument("oracle: ell must divide p+1 exactly once");
    for (auto const &pt : montgomery_points(m.p, e)) {
        WPoint P = AffinePoint{m.add(pt.x, shift), pt.y};
        auto T = W.mul(P, order / ell);
        if (T)
            return T;
    }
    throw std::logic_error("oracle: no rational point of order ell");
}

} // namespace

std::vector<AffinePoint> montgomery_points(uint64_t p, uint64_t e)
{
    guard(p);
    Mod m{p};
    // y^2 lookup table
    std::vector<std::vector<uint64_t>> roots(p);
    for (uint64_t y = 0; y < p; ++y)
        roots[m.mul(y, y)].push_back(y);
    std::vector<AffinePoint> pts;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t rhs = m.add(m.mul(x, m.add(m.mul(x, x), m.mul(e, x))), x);
        for (auto y : roots[rhs])
            pts.push_back({x, y});
    }
    return pts;
}

uint64_t count_points(uint64_t p, uint64_t e)
{
    return montgomery_points(p, e).size() + 1;
}

std::vector<uint64_t> supersingular_coefficients(uint64_t p)
{
    guard(p);
    Mod m{p};
    std::vector<uint64_t> out;
    for (uint64_t e = 0; e < p; ++e) {
        if (m.mul(e, e) == 4)
            continue;
        if (count_points(p, e) == p + 1)
            out.push_back(e);
    }
    return out;
}

std::vector<uint64_t> rational_torsion_x(uint64_t p, uint64_t e, uint64_t ell)
{
    guard(p);
    Mod m{p};
    auto W = to_weierstrass(m, e);
    uint64_t shift = m.mul(e, m.inv(3));
    WPoint T = order_ell_point(W, e, ell);
    std::vector<uint64_t> xs;
    WPoint Q = T;
    for (uint64_t k = 1; k < ell; ++k, Q = W.add(Q, T))
        xs.push_back(m.sub(Q->x, shift));
    return xs;
}

uint64_t rational_isogeny(uint64_t p, uint64_t e, uint64_t ell)
{
    guard(p);
    Mod m{p};
    auto W = to_weierstrass(m, e);
    WPoint T = order_ell_point(W, e, ell);

    // Velu over one representative of each {Q, -Q}
    uint64_t t = 0, w = 0;
    WPoint Q = T;
    for (uint64_t k = 1; k <= (ell - 1) / 2; ++k, Q = W.add(Q, T)) {
        uint64_t tq = m.add(m.mul(6, m.mul(Q->x, Q->x)), m.mul(2, W.a));
        uint64_t uq = m.mul(4, m.mul(Q->y, Q->y));
        t = m.add(t, tq);
        w = m.add(w, m.add(uq, m.mul(Q->x, tq)));
    }
    Weierstrass image{m, m.sub(W.a, m.mul(5, t)), m.sub(W.b, m.mul(7, w))};
    return to_montgomery(image);
}

uint64_t action(uint64_t p, std::vector<uint32_t> const &small_primes, uint64_t e,
                size_t index, int sign)
{
    guard(p);
    if (index >= small_primes.size())
        throw std::out_of_range("oracle: prime index");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("oracle: sign must be +1 or -1");
    Mod m{p};
    uint64_t ell = small_primes[index];
    if (sign > 0)
        return rational_isogeny(p, m.red(e), ell);
    return m.sub(0, rational_isogeny(p, m.sub(0, e), ell));
}

}
