#pragma once

// Shared fixtures for the scheme tests and the acceptance runner.

#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "csips/rng.hpp"
#include "csips/scheme.hpp"

namespace csips::testing {

struct Pipeline
{
    KeyPair A, B;
    Bytes d_B, m;
    ProxyShare z;
    ProxySignature sig;
    bool share_ok = false, sig_ok = false;
};

inline Bytes random_bytes(Rng &rng, size_t n)
{
    Bytes b(n);
    rng.fill(b);
    return b;
}

/// keygen x2 -> delegate -> share-verify -> sign -> verify
inline Pipeline run_pipeline(ParamSet const &ps, Rng &rng)
{
    Pipeline p;
    p.A = keygen(ps, Role::original, rng);
    p.B = keygen(ps, Role::proxy, rng);
    p.d_B = random_bytes(rng, 12);
    p.m = random_bytes(rng, 16);
    p.z = proxy_share_generate(p.A.sk, p.A.pk, p.d_B, ps, rng);
    p.share_ok = proxy_share_verify(p.A.pk, p.d_B, p.z, ps);
    p.sig = proxy_sign(p.m, p.B.sk, p.B.pk, p.d_B, p.z, ps, rng);
    p.sig_ok = proxy_verify(p.m, p.sig, p.A.pk, p.B.pk, p.d_B, p.z, ps);
    return p;
}

/// One adversarial input to proxy_verify.
struct TamperCase
{
    std::string kind;
    Bytes m;
    ProxySignature sig;
    PublicKey pkA, pkB;
    Bytes d_B;
    ProxyShare z;

    bool accepted(ParamSet const &ps) const
    {
        return proxy_verify(m, sig, pkA, pkB, d_B, z, ps);
    }
};

/// Single mutations of an honest pipeline, all caught by the challenge
/// hash. `other` is a second honest pipeline run against the same original
/// signer, used for warrant swaps.
inline std::vector<TamperCase> tamper_cases(Pipeline const &p, Pipeline const &other,
                                            ParamSet const &ps, Rng &rng, size_t per_kind)
{
    std::vector<TamperCase> out;
    auto base = [&](std::string kind) {
        return TamperCase{std::move(kind), p.m, p.sig, p.A.pk, p.B.pk, p.d_B, p.z};
    };

    for (size_t k = 0; k < per_kind; ++k) {
        auto c = base("message byte flip");
        c.m[rng.below(c.m.size())] ^= static_cast<uint8_t>(1u << rng.below(8));
        out.push_back(std::move(c));
    }
    for (size_t k = 0; k < per_kind; ++k) {
        auto c = base("attribute byte flip");
        c.d_B[rng.below(c.d_B.size())] ^= static_cast<uint8_t>(1u << rng.below(8));
        out.push_back(std::move(c));
    }
    auto nudge = [&](ExponentVector &v) {
        auto &x = v.a[rng.below(v.size())];
        x += x < static_cast<int64_t>(ps.I1) ? 1 : -1;
    };
    for (size_t k = 0; k < per_kind; ++k) {
        auto c = base("share response perturbed");
        nudge(c.z.responses[rng.below(c.z.responses.size())]);
        out.push_back(std::move(c));
    }
    for (size_t k = 0; k < per_kind; ++k) {
        auto c = base("signature response perturbed");
        nudge(c.sig.responses[rng.below(c.sig.responses.size())]);
        out.push_back(std::move(c));
    }
    auto bump = [&](ChallengeTuple &t) {
        auto &v = t.c[rng.below(t.c.size())];
        v = (v + 1 + rng.below(ps.L1)) % (ps.L1 + 1);
    };
    for (size_t k = 0; k < per_kind; ++k) {
        auto c = base("share challenge altered");
        bump(c.z.challenge);
        out.push_back(std::move(c));
    }
    for (size_t k = 0; k < per_kind; ++k) {
        auto c = base("signature challenge altered");
        bump(c.sig.challenge);
        out.push_back(std::move(c));
    }
    for (size_t k = 0; k < per_kind; ++k) {
        auto c = base(k % 2 ? "share response out of bound" : "signature response out of bound");
        auto &t = k % 2 ? static_cast<Transcript &>(c.z) : static_cast<Transcript &>(c.sig);
        auto &v = t.responses[rng.below(t.responses.size())];
        v.a[rng.below(v.size())] = (rng.below(2) ? 1 : -1) * static_cast<int64_t>(ps.I1 + 1 + rng.below(3));
        out.push_back(std::move(c));
    }
    {
        auto c = base("warrant swapped for another proxy's");
        c.d_B = other.d_B;
        c.z = other.z;
        out.push_back(std::move(c));
        auto d = base("share swapped, attribute kept");
        d.z = other.z;
        out.push_back(std::move(d));
        auto e = base("attribute swapped, share kept");
        e.d_B = other.d_B;
        out.push_back(std::move(e));
        auto f = base("signature from another proxy");
        f.sig = other.sig;
        out.push_back(std::move(f));
    }
    return out;
}

/// Public-key substitutions. The verification equations use the signer's
/// key only at zero challenge entries, so these are not hash-bound: each is
/// accepted exactly when the substitute agrees on every curve those entries
/// select (see substitution_accepts).
inline std::vector<TamperCase> key_substitution_cases(Pipeline const &p, Pipeline const &other)
{
    std::vector<TamperCase> out;
    auto base = [&](std::string kind) {
        return TamperCase{std::move(kind), p.m, p.sig, p.A.pk, p.B.pk, p.d_B, p.z};
    };
    auto g = base("proxy key swapped");
    g.pkB = other.B.pk;
    out.push_back(std::move(g));
    auto h = base("original key swapped");
    h.pkA = other.B.pk;
    out.push_back(std::move(h));
    auto i = base("signer keys exchanged");
    std::swap(i.pkA, i.pkB);
    out.push_back(std::move(i));
    return out;
}

/// Independent prediction for a substituted-key case built from an honest
/// pipeline: the hash inputs are unchanged iff every curve read at a zero
/// challenge is the same under both keys.
inline bool substitution_accepts(Pipeline const &p, TamperCase const &c, ParamSet const &ps)
{
    auto h = h1(c.d_B, ps).h;
    for (uint32_t i = 0; i < ps.M1; ++i)
        for (uint32_t j = 0; j < ps.M2; ++j)
            if (p.z.challenge.at(i, j) == 0 && !(c.pkA.at(ps, h[i]) == p.A.pk.at(ps, h[i])))
                return false;
    auto hp = h1(encode_share(c.z, ps), ps).h;
    for (uint32_t i = 0; i < ps.M1; ++i)
        for (uint32_t j = 0; j < ps.M2; ++j)
            if (p.sig.challenge.at(i, j) == 0 && !(c.pkB.at(ps, hp[i]) == p.B.pk.at(ps, hp[i])))
                return false;
    return true;
}

/// Two-sample chi-square homogeneity test over matching histogram bins;
/// returns the p-value. Bins empty in both samples are dropped.
inline double homogeneity_p_value(std::vector<double> const &a, std::vector<double> const &b)
{
    double na = 0, nb = 0;
    for (auto v : a)
        na += v;
    for (auto v : b)
        nb += v;
    double stat = 0;
    int bins = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        double col = a[k] + b[k];
        if (col == 0)
            continue;
        ++bins;
        double ea = col * na / (na + nb), eb = col * nb / (na + nb);
        stat += (a[k] - ea) * (a[k] - ea) / ea + (b[k] - eb) * (b[k] - eb) / eb;
    }
    if (bins < 2)
        return 1.0;
    boost::math::chi_squared_distribution<double> dist(bins - 1);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Histogram of accepted share responses under one secret key, with bins
/// for every value in [-I1, I1]. Also reports attempts for the rate check.
struct ResponseSample
{
    std::vector<double> histogram;
    uint64_t shares = 0, attempts = 0;
};

inline ResponseSample sample_responses(KeyPair const &A, ParamSet const &ps, Rng &rng, uint64_t shares)
{
    ResponseSample s;
    s.histogram.assign(2 * ps.I1 + 1, 0);
    for (uint64_t t = 0; t < shares; ++t) {
        auto d = random_bytes(rng, 8);
        GenerationStats st;
        auto z = proxy_share_generate(A.sk, A.pk, d, ps, rng, {}, &st);
        s.attempts += st.attempts;
        ++s.shares;
        for (auto const &y : z.responses)
            for (auto x : y.a)
                s.histogram[static_cast<size_t>(x + static_cast<int64_t>(ps.I1))] += 1;
    }
    return s;
}

}
