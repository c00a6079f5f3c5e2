#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csips/codec.hpp"
#include "csips/hashing.hpp"
#include "csips/isogeny.hpp"
#include "csips/params.hpp"

namespace csips {

class Rng;

enum class Role : uint8_t
{
    original,
    proxy,
};

struct SecretKey
{
    Role role = Role::original;
    std::vector<ExponentVector> vecs;  // a^(1) .. a^(L0)

    /// a^(h) with the zero vector at h = 0.
    ExponentVector at(ParamSet const &ps, uint64_t h) const;
};

struct PublicKey
{
    std::vector<MontCurve> curves;  // E_1 .. E_L0

    /// E_h with the base curve at h = 0.
    MontCurve at(ParamSet const &ps, uint64_t h) const;
    bool operator==(PublicKey const &) const = default;
};

struct KeyPair
{
    PublicKey pk;
    SecretKey sk;
};

/// Challenge string plus one response per (i, j), i-major. Used for both
/// proxy shares (C, y) and proxy signatures (D, eta).
struct Transcript
{
    ChallengeTuple challenge;
    std::vector<ExponentVector> responses;

    bool operator==(Transcript const &o) const
    {
        return challenge == o.challenge && responses == o.responses;
    }
};

struct ProxyShare : Transcript {};
struct ProxySignature : Transcript {};

enum class WarrantStatus : uint8_t
{
    active = 0,
    revoked = 1,
};

struct Warrant
{
    Bytes d_B;
    ProxyShare share;
    WarrantStatus status = WarrantStatus::active;
    uint64_t created = 0;  // seconds since the epoch
};

/// Generation gave up after too many filter rejections.
class RetryLimitExceeded : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

struct GenerationOptions
{
    uint64_t max_attempts = 100000;
    /// Worker threads for the independent group actions; 0 picks the
    /// hardware concurrency.
    unsigned threads = 1;
    OpCounter *counter = nullptr;
};

struct GenerationStats
{
    uint64_t attempts = 0;
    uint64_t actions = 0;
    /// Commitment curves of the accepted attempt, i-major.
    std::vector<MontCurve> commitments;
};

KeyPair keygen(ParamSet const &ps, Role role, Rng &rng, GenerationOptions const &opt = {});

ProxyShare proxy_share_generate(SecretKey const &sk_A, PublicKey const &pk_A, ByteView d_B,
                                ParamSet const &ps, Rng &rng,
                                GenerationOptions const &opt = {},
                                GenerationStats *stats = nullptr);

bool proxy_share_verify(PublicKey const &pk_A, ByteView d_B, ProxyShare const &share,
                        ParamSet const &ps, OpCounter *counter = nullptr);

ProxySignature proxy_sign(ByteView m, SecretKey const &sk_B, PublicKey const &pk_B,
                          ByteView d_B, ProxyShare const &z_B, ParamSet const &ps, Rng &rng,
                          GenerationOptions const &opt = {},
                          GenerationStats *stats = nullptr);

bool proxy_verify(ByteView m, ProxySignature const &sig, PublicKey const &pk_A,
                  PublicKey const &pk_B, ByteView d_B, ProxyShare const &z_B,
                  ParamSet const &ps, OpCounter *counter = nullptr);

/// Curves the verifier rebuilds from a transcript: [y]E_{h_i} for
/// challenge 0 and [y]E_0 otherwise. Exposed so tests can compare them
/// with the signer's commitments directly.
std::vector<MontCurve> share_verifier_curves(PublicKey const &pk_A, ByteView d_B,
                                             ProxyShare const &share, ParamSet const &ps);

/// Hash payloads, exposed for FORMATS and golden tests.
Bytes share_challenge_payload(ByteView d_B, std::vector<MontCurve> const &X, ParamSet const &ps);
Bytes signature_challenge_payload(Bytes const &z_B, ByteView m, std::vector<MontCurve> const &Y,
                                  ParamSet const &ps);

// Payload codecs. Lengths: public key L0 * curve_bits(ps), secret key and
// transcripts exactly the SizeReport bit counts, rounded up to bytes.
Bytes encode_public_key(PublicKey const &pk, ParamSet const &ps);
PublicKey decode_public_key(ByteView b, ParamSet const &ps);
Bytes encode_secret_key(SecretKey const &sk, ParamSet const &ps);
SecretKey decode_secret_key(ByteView b, Role role, ParamSet const &ps);
Bytes encode_share(ProxyShare const &z, ParamSet const &ps);
ProxyShare decode_share(ByteView b, ParamSet const &ps);
Bytes encode_signature(ProxySignature const &s, ParamSet const &ps);
ProxySignature decode_signature(ByteView b, ParamSet const &ps);
Bytes encode_warrant(Warrant const &w, ParamSet const &ps);
Warrant decode_warrant(ByteView b, ParamSet const &ps);

/// Content address of a warrant: depends on d_B and the share only.
std::string warrant_id(Warrant const &w, ParamSet const &ps);

/// The t-round binary-challenge base signature. Uses the prime of `base`
/// with its own bounds.
struct SeaSignParams
{
    ParamSet base;
    uint32_t t = 0;
    uint64_t I0 = 0, I1 = 0;

    static SeaSignParams make(ParamSet base, uint32_t t, uint64_t I0, uint64_t I1);
};

struct SeaSignKey
{
    ExponentVector a;
    MontCurve E1;
};

struct SeaSignSignature
{
    std::vector<uint8_t> bits;  // b_1 .. b_t
    std::vector<ExponentVector> z;
};

SeaSignKey seasign_keygen(SeaSignParams const &sp, Rng &rng);
SeaSignSignature seasign_sign(ByteView m, SeaSignKey const &key, SeaSignParams const &sp, Rng &rng,
                              GenerationOptions const &opt = {}, GenerationStats *stats = nullptr);
bool seasign_verify(ByteView m, MontCurve const &E1, SeaSignSignature const &sig,
                    SeaSignParams const &sp);

}
