#include "csips/scheme.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "csips/rng.hpp"

namespace csips {

namespace {

constexpr std::string_view kTagWarrantId = "CSI-PS/warrant-id";
constexpr std::string_view kTagSeaSign = "CSI-PS/SeaSign";

// [vecs[k]] starts[k] for every k, spread over opt.threads workers. Each job
// gets its own forked stream so the split does not depend on scheduling.
std::vector<MontCurve> run_actions(ParamSet const &ps, std::vector<MontCurve> const &starts,
                                   std::vector<ExponentVector> const &vecs, Rng &rng,
                                   GenerationOptions const &opt)
{
    size_t jobs = vecs.size();
    std::vector<Rng> streams;
    streams.reserve(jobs);
    for (size_t k = 0; k < jobs; ++k)
        streams.push_back(rng.fork("action"));

    std::vector<MontCurve> out(jobs);
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<size_t>(threads, jobs));
    if (threads <= 1) {
        for (size_t k = 0; k < jobs; ++k)
            out[k] = group_action(ps, starts[k], vecs[k], streams[k], opt.counter);
        return out;
    }

    std::atomic<size_t> next{0};
    std::vector<OpCounter> counters(threads);
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (size_t k; (k = next.fetch_add(1)) < jobs;)
                    out[k] = group_action(ps, starts[k], vecs[k], streams[k],
                                          opt.counter ? &counters[t] : nullptr);
            } catch (...) {
                std::lock_guard g(failure_lock);
                if (!failure)
                    failure = std::current_exception();
                next = jobs;
            }
        });
    for (auto &th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
    if (opt.counter)
        for (auto const &c : counters)
            *opt.counter += c;
    return out;
}

void append_curves(Bytes &out, std::vector<MontCurve> const &curves, ParamSet const &ps)
{
    Field F = field_for(ps);
    size_t w = field_bytes(ps.log_p_bits);
    append_u64(out, curves.size());
    for (auto const &E : curves)
        append_bytes(out, F.encode(E.e, w));
}

bool transcript_shape_ok(Transcript const &t, ParamSet const &ps)
{
    uint32_t mm = ps.challenge_count();
    if (t.challenge.c.size() != mm || t.challenge.M2 != ps.M2 || t.responses.size() != mm)
        return false;
    for (auto c : t.challenge.c)
        if (c > ps.L1)
            return false;
    for (auto const &y : t.responses)
        if (y.size() != ps.n || !y.within(ps.I1))
            return false;
    return true;
}

void require_pk_shape(PublicKey const &pk, ParamSet const &ps)
{
    if (pk.curves.size() != ps.L0)
        throw std::invalid_argument("public key has the wrong number of curves");
}

// Commit, challenge, filter; restarts the whole batch when any response
// leaves [-I1, I1]^n.
template <class MakeChallenge>
Transcript fiat_shamir(SecretKey const &sk, PublicKey const &pk, std::vector<uint64_t> const &h,
                       ParamSet const &ps, Rng &rng, GenerationOptions const &opt,
                       GenerationStats *stats, MakeChallenge challenge_of)
{
    uint32_t mm = ps.challenge_count();
    uint64_t wide = ps.I0 + ps.I1;
    std::vector<MontCurve> starts(mm);
    for (uint32_t i = 0; i < ps.M1; ++i)
        for (uint32_t j = 0; j < ps.M2; ++j)
            starts[i * ps.M2 + j] = pk.at(ps, h[i]);

    GenerationStats local;
    for (uint64_t attempt = 1; attempt <= opt.max_attempts; ++attempt) {
        local.attempts = attempt;
        std::vector<ExponentVector> x(mm);
        for (auto &v : x)
            v = ExponentVector::sample(ps.n, wide, rng);
        auto commitments = run_actions(ps, starts, x, rng, opt);
        local.actions += mm;

        Transcript t{challenge_of(commitments), {}};
        bool ok = true;
        t.responses.reserve(mm);
        for (uint32_t i = 0; i < ps.M1 && ok; ++i)
            for (uint32_t j = 0; j < ps.M2; ++j) {
                auto const &xv = x[i * ps.M2 + j];
                auto y = t.challenge.at(i, j) == 0 ? xv : xv + sk.at(ps, h[i]);
                if (!y.within(ps.I1)) {
                    ok = false;
                    break;
                }
                y.bound = ps.I1;
                t.responses.push_back(std::move(y));
            }
        if (ok) {
            local.commitments = std::move(commitments);
            if (stats)
                *stats = local;
            return t;
        }
    }
    if (stats)
        *stats = local;
    throw RetryLimitExceeded("rejection sampling exceeded " + std::to_string(opt.max_attempts)
                             + " attempts");
}

// [y]E_{h_i} when the challenge entry is 0, [y]E_0 otherwise.
std::vector<MontCurve> verifier_curves(PublicKey const &pk, std::vector<uint64_t> const &h,
                                       Transcript const &t, ParamSet const &ps,
                                       OpCounter *counter)
{
    auto rng = Rng::system();
    auto E0 = base_curve(ps);
    std::vector<MontCurve> out;
    out.reserve(t.responses.size());
    for (uint32_t i = 0; i < ps.M1; ++i)
        for (uint32_t j = 0; j < ps.M2; ++j) {
            auto const &start = t.challenge.at(i, j) == 0 ? pk.at(ps, h[i]) : E0;
            out.push_back(group_action(ps, start, t.responses[i * ps.M2 + j], rng, counter));
        }
    return out;
}

Bytes encode_transcript(Transcript const &t, ParamSet const &ps)
{
    if (!transcript_shape_ok(t, ps))
        throw std::invalid_argument("transcript does not match the parameter set");
    BitWriter w;
    for (auto c : t.challenge.c)
        w.put(c, ps.gamma1);
    for (auto const &y : t.responses)
        put_vector(w, y, ps.I1);
    return w.finish();
}

Transcript decode_transcript(ByteView b, ParamSet const &ps)
{
    BitReader r(b);
    uint32_t mm = ps.challenge_count();
    Transcript t;
    t.challenge.M2 = ps.M2;
    for (uint32_t k = 0; k < mm; ++k)
        t.challenge.c.push_back(r.get(ps.gamma1));
    for (uint32_t k = 0; k < mm; ++k)
        t.responses.push_back(get_vector(r, ps.n, ps.I1));
    r.finish();
    return t;
}

} // namespace

ExponentVector SecretKey::at(ParamSet const &ps, uint64_t h) const
{
    if (h == 0)
        return ExponentVector::zero(ps.n, ps.I0);
    if (h > vecs.size())
        throw std::out_of_range("secret key index");
    return vecs[h - 1];
}

MontCurve PublicKey::at(ParamSet const &ps, uint64_t h) const
{
    if (h == 0)
        return base_curve(ps);
    if (h > curves.size())
        throw std::out_of_range("public key index");
    return curves[h - 1];
}

KeyPair keygen(ParamSet const &ps, Role role, Rng &rng, GenerationOptions const &opt)
{
    KeyPair kp;
    kp.sk.role = role;
    kp.sk.vecs.reserve(ps.L0);
    for (uint64_t i = 0; i < ps.L0; ++i)
        kp.sk.vecs.push_back(ExponentVector::sample(ps.n, ps.I0, rng));
    std::vector<MontCurve> starts(ps.L0, base_curve(ps));
    kp.pk.curves = run_actions(ps, starts, kp.sk.vecs, rng, opt);
    return kp;
}

Bytes share_challenge_payload(ByteView d_B, std::vector<MontCurve> const &X, ParamSet const &ps)
{
    Bytes out;
    append_field(out, d_B);
    append_curves(out, X, ps);
    return out;
}

Bytes signature_challenge_payload(Bytes const &z_B, ByteView m, std::vector<MontCurve> const &Y,
                                  ParamSet const &ps)
{
    Bytes out;
    append_field(out, z_B);
    append_field(out, m);
    append_curves(out, Y, ps);
    return out;
}

ProxyShare proxy_share_generate(SecretKey const &sk_A, PublicKey const &pk_A, ByteView d_B,
                                ParamSet const &ps, Rng &rng, GenerationOptions const &opt,
                                GenerationStats *stats)
{
    if (sk_A.role != Role::original)
        throw std::invalid_argument("proxy shares are generated with the original signer's key");
    require_pk_shape(pk_A, ps);
    auto h = h1(d_B, ps).h;
    auto t = fiat_shamir(sk_A, pk_A, h, ps, rng, opt, stats, [&](auto const &X) {
        return h2(share_challenge_payload(d_B, X, ps), ps);
    });
    return {std::move(t)};
}

std::vector<MontCurve> share_verifier_curves(PublicKey const &pk_A, ByteView d_B,
                                             ProxyShare const &share, ParamSet const &ps)
{
    require_pk_shape(pk_A, ps);
    if (!transcript_shape_ok(share, ps))
        throw std::invalid_argument("share does not match the parameter set");
    return verifier_curves(pk_A, h1(d_B, ps).h, share, ps, nullptr);
}

bool proxy_share_verify(PublicKey const &pk_A, ByteView d_B, ProxyShare const &share,
                        ParamSet const &ps, OpCounter *counter)
{
    if (pk_A.curves.size() != ps.L0 || !transcript_shape_ok(share, ps))
        return false;
    try {
        auto X = verifier_curves(pk_A, h1(d_B, ps).h, share, ps, counter);
        return h2(share_challenge_payload(d_B, X, ps), ps) == share.challenge;
    } catch (std::exception const &) {
        // a malformed key can make the action fail; that is a reject
        return false;
    }
}

ProxySignature proxy_sign(ByteView m, SecretKey const &sk_B, PublicKey const &pk_B,
                          ByteView d_B, ProxyShare const &z_B, ParamSet const &ps, Rng &rng,
                          GenerationOptions const &opt, GenerationStats *stats)
{
    (void)d_B;  // bound through the warrant check on the verifier side
    if (sk_B.role != Role::proxy)
        throw std::invalid_argument("proxy signatures are generated with the proxy signer's key");
    require_pk_shape(pk_B, ps);
    auto z = encode_share(z_B, ps);
    auto h = h1(z, ps).h;
    auto t = fiat_shamir(sk_B, pk_B, h, ps, rng, opt, stats, [&](auto const &Y) {
        return h2(signature_challenge_payload(z, m, Y, ps), ps);
    });
    return {std::move(t)};
}

bool proxy_verify(ByteView m, ProxySignature const &sig, PublicKey const &pk_A,
                  PublicKey const &pk_B, ByteView d_B, ProxyShare const &z_B,
                  ParamSet const &ps, OpCounter *counter)
{
    if (!proxy_share_verify(pk_A, d_B, z_B, ps, counter))
        return false;
    if (pk_B.curves.size() != ps.L0 || !transcript_shape_ok(sig, ps))
        return false;
    try {
        auto z = encode_share(z_B, ps);
        auto Y = verifier_curves(pk_B, h1(z, ps).h, sig, ps, counter);
        return h2(signature_challenge_payload(z, m, Y, ps), ps) == sig.challenge;
    } catch (std::exception const &) {
        return false;
    }
}

Bytes encode_public_key(PublicKey const &pk, ParamSet const &ps)
{
    require_pk_shape(pk, ps);
    BitWriter w;
    for (auto const &E : pk.curves)
        put_curve(w, ps, E);
    return w.finish();
}

PublicKey decode_public_key(ByteView b, ParamSet const &ps)
{
    BitReader r(b);
    PublicKey pk;
    pk.curves.reserve(ps.L0);
    for (uint64_t i = 0; i < ps.L0; ++i)
        pk.curves.push_back(get_curve(r, ps));
    r.finish();
    return pk;
}

Bytes encode_secret_key(SecretKey const &sk, ParamSet const &ps)
{
    if (sk.vecs.size() != ps.L0)
        throw std::invalid_argument("secret key has the wrong number of vectors");
    BitWriter w;
    for (auto const &v : sk.vecs) {
        if (v.size() != ps.n)
            throw std::invalid_argument("secret vector has the wrong length");
        put_vector(w, v, ps.I0);
    }
    return w.finish();
}

SecretKey decode_secret_key(ByteView b, Role role, ParamSet const &ps)
{
    BitReader r(b);
    SecretKey sk{role, {}};
    sk.vecs.reserve(ps.L0);
    for (uint64_t i = 0; i < ps.L0; ++i)
        sk.vecs.push_back(get_vector(r, ps.n, ps.I0));
    r.finish();
    return sk;
}

Bytes encode_share(ProxyShare const &z, ParamSet const &ps)
{
    return encode_transcript(z, ps);
}

ProxyShare decode_share(ByteView b, ParamSet const &ps)
{
    return {decode_transcript(b, ps)};
}

Bytes encode_signature(ProxySignature const &s, ParamSet const &ps)
{
    return encode_transcript(s, ps);
}

ProxySignature decode_signature(ByteView b, ParamSet const &ps)
{
    return {decode_transcript(b, ps)};
}

Bytes encode_warrant(Warrant const &w, ParamSet const &ps)
{
    Bytes out;
    append_field(out, w.d_B);
    append_field(out, encode_share(w.share, ps));
    out.push_back(static_cast<uint8_t>(w.status));
    append_u64(out, w.created);
    return out;
}

Warrant decode_warrant(ByteView b, ParamSet const &ps)
{
    size_t pos = 0;
    Warrant w;
    w.d_B = read_field(b, pos);
    w.share = decode_share(read_field(b, pos), ps);
    if (pos >= b.size())
        throw DecodeError("truncated warrant");
    uint8_t status = b[pos++];
    if (status > 1)
        throw DecodeError("unknown warrant status");
    w.status = static_cast<WarrantStatus>(status);
    w.created = read_u64(b, pos);
    if (pos != b.size())
        throw DecodeError("trailing bytes after warrant");
    return w;
}

std::string warrant_id(Warrant const &w, ParamSet const &ps)
{
    Bytes body;
    append_field(body, w.d_B);
    append_field(body, encode_share(w.share, ps));
    return to_hex(shake256({as_bytes(kTagWarrantId), ps.encode(), body}, 32));
}

SeaSignParams SeaSignParams::make(ParamSet base, uint32_t t, uint64_t I0, uint64_t I1)
{
    if (t == 0)
        throw std::invalid_argument("SeaSign needs at least one round");
    if (I1 < I0)
        throw std::invalid_argument("SeaSign response bound must be at least the key bound");
    return {std::move(base), t, I0, I1};
}

namespace {

std::vector<uint8_t> seasign_bits(ByteView m, std::vector<MontCurve> const &X, SeaSignParams const &sp)
{
    Bytes payload;
    append_u64(payload, sp.t);
    append_u64(payload, sp.I0);
    append_u64(payload, sp.I1);
    append_curves(payload, X, sp.base);
    append_field(payload, m);
    auto chunks = hash_to_chunks(kTagSeaSign, sp.base, payload, 1, sp.t);
    return {chunks.begin(), chunks.end()};
}

} // namespace

SeaSignKey seasign_keygen(SeaSignParams const &sp, Rng &rng)
{
    auto a = ExponentVector::sample(sp.base.n, sp.I0, rng);
    auto E1 = group_action(sp.base, base_curve(sp.base), a, rng);
    return {std::move(a), E1};
}

SeaSignSignature seasign_sign(ByteView m, SeaSignKey const &key, SeaSignParams const &sp, Rng &rng,
                              GenerationOptions const &opt, GenerationStats *stats)
{
    auto const &ps = sp.base;
    std::vector<MontCurve> starts(sp.t, base_curve(ps));
    GenerationStats local;
    for (uint64_t attempt = 1; attempt <= opt.max_attempts; ++attempt) {
        local.attempts = attempt;
        std::vector<ExponentVector> x(sp.t);
        for (auto &v : x)
            v = ExponentVector::sample(ps.n, sp.I0 + sp.I1, rng);
        auto X = run_actions(ps, starts, x, rng, opt);
        local.actions += sp.t;
        SeaSignSignature sig{seasign_bits(m, X, sp), {}};
        bool ok = true;
        for (uint32_t k = 0; k < sp.t && ok; ++k) {
            auto z = sig.bits[k] ? x[k] - key.a : x[k];
            ok = z.within(sp.I1);
            z.bound = sp.I1;
            sig.z.push_back(std::move(z));
        }
        if (ok) {
            local.commitments = std::move(X);
            if (stats)
                *stats = local;
            return sig;
        }
    }
    if (stats)
        *stats = local;
    throw RetryLimitExceeded("SeaSign rejection sampling exceeded its attempt limit");
}

bool seasign_verify(ByteView m, MontCurve const &E1, SeaSignSignature const &sig,
                    SeaSignParams const &sp)
{
    auto const &ps = sp.base;
    if (sig.bits.size() != sp.t || sig.z.size() != sp.t)
        return false;
    for (uint32_t k = 0; k < sp.t; ++k)
        if (sig.bits[k] > 1 || sig.z[k].size() != ps.n || !sig.z[k].within(sp.I1))
            return false;
    try {
        auto rng = Rng::system();
        std::vector<MontCurve> X;
        for (uint32_t k = 0; k < sp.t; ++k)
            X.push_back(group_action(ps, sig.bits[k] ? E1 : base_curve(ps), sig.z[k], rng));
        return seasign_bits(m, X, sp) == sig.bits;
    } catch (std::exception const &) {
        return false;
    }
}

}
