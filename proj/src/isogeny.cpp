#include "csips/isogeny.hpp"

#include <algorithm>
#include <stdexcept>

#include "csips/oracle.hpp"
#include "csips/rng.hpp"

namespace csips {

ExponentVector ExponentVector::zero(uint32_t n, uint64_t bound)
{
    return {std::vector<int64_t>(n, 0), bound};
}

ExponentVector ExponentVector::sample(uint32_t n, uint64_t bound, Rng &rng)
{
    ExponentVector v{std::vector<int64_t>(n), bound};
    for (auto &x : v.a)
        x = rng.symmetric(bound);
    return v;
}

bool ExponentVector::is_zero() const
{
    return std::all_of(a.begin(), a.end(), [](int64_t x) { return x == 0; });
}

bool ExponentVector::within(uint64_t b) const
{
    return std::all_of(a.begin(), a.end(), [b](int64_t x) {
        return static_cast<uint64_t>(x < 0 ? -x : x) <= b;
    });
}

ExponentVector ExponentVector::operator-() const
{
    ExponentVector r = *this;
    for (auto &x : r.a)
        x = -x;
    return r;
}

ExponentVector ExponentVector::operator+(ExponentVector const &o) const
{
    if (o.a.size() != a.size())
        throw std::invalid_argument("exponent vectors of different length");
    ExponentVector r{a, bound + o.bound};
    for (size_t i = 0; i < a.size(); ++i)
        r.a[i] += o.a[i];
    return r;
}

ExponentVector ExponentVector::operator-(ExponentVector const &o) const
{
    return *this + (-o);
}

size_t ExponentVector::entry_width(uint64_t bound)
{
    uint64_t span = 2 * bound + 1;
    size_t bits = 64 - static_cast<size_t>(__builtin_clzll(span));
    return std::max<size_t>(1, (bits + 7) / 8);
}

std::vector<uint8_t> ExponentVector::to_bytes() const
{
    size_t w = entry_width(bound);
    std::vector<uint8_t> out;
    out.reserve(w * a.size());
    for (auto x : a) {
        auto u = static_cast<uint64_t>(x);
        for (size_t k = 0; k < w; ++k)
            out.push_back(static_cast<uint8_t>(u >> (8 * k)));
    }
    return out;
}

ExponentVector ExponentVector::from_bytes(std::span<uint8_t const> bytes, uint32_t n, uint64_t bound)
{
    size_t w = entry_width(bound);
    if (bytes.size() != w * n)
        throw std::invalid_argument("exponent vector encoding has the wrong length");
    ExponentVector v{std::vector<int64_t>(n), bound};
    for (uint32_t i = 0; i < n; ++i) {
        uint64_t u = 0;
        for (size_t k = 0; k < w; ++k)
            u |= uint64_t(bytes[i * w + k]) << (8 * k);
        if (w < 8 && (u >> (8 * w - 1)) & 1)
            u |= ~uint64_t(0) << (8 * w);
        v.a[i] = static_cast<int64_t>(u);
    }
    if (!v.within(bound))
        throw std::invalid_argument("exponent vector entry out of bound");
    return v;
}

MontCurve ProjCurve::affine(Field const &F) const
{
    // A/C = (4*A24 - 2*C24) / C24
    auto a = F.add(k.a24, k.a24);
    a = F.sub(F.add(a, a), F.add(k.c24, k.c24));
    if (k.c24.is_one())
        return {a};
    return {F.mul(a, F.inv(k.c24))};
}

void velu_isogeny(Field const &F, ProjCurve &E, XPoint const &kernel, uint32_t ell,
                  std::span<XPoint> push)
{
    if (ell < 3 || ell % 2 == 0)
        throw std::invalid_argument("isogeny degree must be an odd prime");
    if (kernel.is_infinity())
        throw std::invalid_argument("isogeny kernel is the point at infinity");
    {
        Field G = F.with_counter(nullptr);
        if (!ladder(G, kernel, mpz_class(ell), E.k).is_infinity())
            throw std::invalid_argument("isogeny kernel does not have order ell");
    }

    // multiples [1]K .. [d]K, d = (ell-1)/2
    uint32_t d = (ell - 1) / 2;
    std::vector<Fp> plus, minus;
    plus.reserve(d);
    minus.reserve(d);
    XPoint prev = kernel, cur = kernel;
    for (uint32_t i = 1; i <= d; ++i) {
        if (i == 2) {
            cur = xdbl(F, kernel, E.k);
        } else if (i > 2) {
            auto next = xadd(F, cur, kernel, prev);
            prev = std::move(cur);
            cur = std::move(next);
        }
        plus.push_back(F.add(cur.X, cur.Z));
        minus.push_back(F.sub(cur.X, cur.Z));
    }

    for (auto &Q : push) {
        if (Q.is_infinity())
            continue;
        auto qp = F.add(Q.X, Q.Z), qm = F.sub(Q.X, Q.Z);
        Fp xs = F.one(), zs = F.one();
        for (uint32_t i = 0; i < d; ++i) {
            auto u = F.mul(qm, plus[i]);
            auto v = F.mul(qp, minus[i]);
            xs = i ? F.mul(xs, F.add(u, v)) : F.add(u, v);
            zs = i ? F.mul(zs, F.sub(u, v)) : F.sub(u, v);
        }
        Q = {F.mul(Q.X, F.sqr(xs)), F.mul(Q.Z, F.sqr(zs))};
    }

    // twisted Edwards form: a = A + 2C, d = A - 2C; a' = a^ell * prod(X+Z)^8,
    // d' = d^ell * prod(X-Z)^8
    Fp pp = plus[0], pm = minus[0];
    for (uint32_t i = 1; i < d; ++i) {
        pp = F.mul(pp, plus[i]);
        pm = F.mul(pm, minus[i]);
    }
    for (int r = 0; r < 3; ++r) {
        pp = F.sqr(pp);
        pm = F.sqr(pm);
    }
    auto ed_a = E.k.a24;
    auto ed_d = F.sub(E.k.a24, E.k.c24);
    auto a2 = F.mul(F.pow(ed_a, mpz_class(ell)), pp);
    auto d2 = F.mul(F.pow(ed_d, mpz_class(ell)), pm);
    E.k = {a2, F.sub(a2, d2)};
}

IsogenyResult velu_isogeny(Field const &F, MontCurve const &E, XPoint const &kernel,
                           uint32_t ell, std::vector<XPoint> push)
{
    auto pc = ProjCurve::from(F, E);
    velu_isogeny(F, pc, kernel, ell, push);
    return {pc.affine(F), std::move(push)};
}

MontCurve group_action(ParamSet const &ps, MontCurve const &E, ExponentVector const &v,
                       Rng &rng, OpCounter *counter, ActionOptions opt)
{
    if (v.size() != ps.n)
        throw std::invalid_argument("exponent vector length does not match n");
    Field F = field_for(ps, counter);
    std::vector<int64_t> left = v.a;
    MontCurve cur = E;
    mpz_class order = ps.p + 1;

    // W is walked from the largest prime down so [f/l_i] shrinks fastest
    std::vector<size_t> by_degree(ps.n);
    for (size_t i = 0; i < ps.n; ++i)
        by_degree[i] = i;
    std::sort(by_degree.begin(), by_degree.end(),
              [&](size_t x, size_t y) { return ps.small_primes[x] > ps.small_primes[y]; });

    uint64_t iterations = 0;
    std::vector<size_t> W;
    while (std::any_of(left.begin(), left.end(), [](int64_t x) { return x != 0; })) {
        if (++iterations > opt.max_iterations)
            throw std::runtime_error("group action exceeded its iteration cap");

        auto x = F.random(rng);
        int w = F.legendre(curve_rhs(F, cur, x));
        if (w == 0)
            continue;

        W.clear();
        mpz_class f = 1;
        for (auto i : by_degree)
            if (left[i] != 0 && (left[i] > 0 ? 1 : -1) == w) {
                W.push_back(i);
                f *= ps.small_primes[i];
            }
        if (W.empty())
            continue;

        auto pc = ProjCurve::from(F, cur);
        XPoint Q = ladder(F, XPoint::affine(x), order / f, pc.k);
        bool moved = false;
        for (size_t j = 0; j < W.size(); ++j) {
            auto i = W[j];
            uint32_t ell = ps.small_primes[i];
            XPoint R = f == ell ? Q : ladder(F, Q, f / ell, pc.k);
            if (R.is_infinity())
                continue;
            // Q is dead after the last step
            bool last = j + 1 == W.size();
            velu_isogeny(F, pc, R, ell, last ? std::span<XPoint>() : std::span<XPoint>(&Q, 1));
            f /= ell;
            left[i] -= w;
            moved = true;
        }
        if (moved)
            cur = pc.affine(F);
    }
    return cur;
}

bool action_compose_check(ParamSet const &ps, ExponentVector const &v1,
                          ExponentVector const &v2, MontCurve const &E, Rng &rng)
{
    auto lhs = group_action(ps, group_action(ps, E, v1, rng), v2, rng);
    auto rhs = group_action(ps, group_action(ps, E, v2, rng), v1, rng);
    return lhs == rhs;
}

MontCurve brute_force_action_oracle(ParamSet const &ps, MontCurve const &E, size_t index, int sign)
{
    if (ps.p > oracle::kMaxPrime)
        throw std::invalid_argument("brute-force oracle needs p <= 10^6");
    auto p = ps.p.get_ui();
    auto e = E.e.value().get_ui();
    return {Fp(mpz_class(static_cast<unsigned long>(oracle::action(p, ps.small_primes, e, index, sign))))};
}

KeyExchangeTranscript csidh_exchange(ParamSet const &ps, ExponentVector const &alice,
                                     ExponentVector const &bob, Rng &rng)
{
    auto E0 = base_curve(ps);
    KeyExchangeTranscript t;
    auto ra = rng.fork("alice"), rb = rng.fork("bob");
    t.alice_public = group_action(ps, E0, alice, ra);
    t.bob_public = group_action(ps, E0, bob, rb);
    t.alice_shared = group_action(ps, t.bob_public, alice, ra);
    t.bob_shared = group_action(ps, t.alice_public, bob, rb);
    return t;
}

}
