#include "csips/hashing.hpp"

#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

namespace csips {

Bytes shake256(std::initializer_list<ByteView> parts, size_t out_len)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1)
        throw std::runtime_error("SHAKE256 unavailable");
    for (auto part : parts)
        if (!part.empty() && EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1)
            throw std::runtime_error("SHAKE256 absorb failed");
    Bytes out(out_len);
    if (out_len > 0 && EVP_DigestFinalXOF(ctx.get(), out.data(), out_len) != 1)
        throw std::runtime_error("SHAKE256 squeeze failed");
    return out;
}

std::vector<uint64_t> parse_chunks(ByteView stream, uint32_t bits, size_t count)
{
    if (bits == 0 || bits > 64)
        throw std::invalid_argument("chunk width must be in [1, 64]");
    if (stream.size() * 8 < size_t(bits) * count)
        throw std::invalid_argument("stream too short for the requested chunks");
    std::vector<uint64_t> out(count, 0);
    size_t pos = 0;
    for (size_t k = 0; k < count; ++k)
        for (uint32_t t = 0; t < bits; ++t, ++pos)
            if ((stream[pos / 8] >> (pos % 8)) & 1)
                out[k] |= uint64_t(1) << t;
    return out;
}

Bytes pack_chunks(std::span<uint64_t const> values, uint32_t bits)
{
    if (bits == 0 || bits > 64)
        throw std::invalid_argument("chunk width must be in [1, 64]");
    Bytes out((values.size() * bits + 7) / 8, 0);
    size_t pos = 0;
    for (auto v : values) {
        if (bits < 64 && (v >> bits) != 0)
            throw std::invalid_argument("value does not fit the chunk width");
        for (uint32_t t = 0; t < bits; ++t, ++pos)
            if ((v >> t) & 1)
                out[pos / 8] |= uint8_t(1u << (pos % 8));
    }
    return out;
}

std::vector<uint64_t> hash_to_chunks(std::string_view tag, ParamSet const &ps,
                                     ByteView payload, uint32_t bits, size_t count)
{
    auto pp = ps.encode();
    auto stream = shake256({as_bytes(tag), pp, payload}, (size_t(bits) * count + 7) / 8);
    return parse_chunks(stream, bits, count);
}

IndexTuple h1(ByteView payload, ParamSet const &ps)
{
    return {hash_to_chunks(kTagH1, ps, payload, ps.gamma0, ps.M1)};
}

ChallengeTuple h2(ByteView payload, ParamSet const &ps)
{
    return {hash_to_chunks(kTagH2, ps, payload, ps.gamma1, ps.challenge_count()), ps.M2};
}

}
