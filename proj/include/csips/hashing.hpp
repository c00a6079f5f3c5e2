#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "csips/params.hpp"

namespace csips {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<uint8_t const>;

inline ByteView as_bytes(std::string_view s)
{
    return {reinterpret_cast<uint8_t const *>(s.data()), s.size()};
}

/// SHAKE256 over the concatenation of parts.
Bytes shake256(std::initializer_list<ByteView> parts, size_t out_len);

inline constexpr std::string_view kTagH1 = "CSI-PS/H1";
inline constexpr std::string_view kTagH2 = "CSI-PS/H2";

/// h_1..h_M1, each in [0, L0]. Index 0 selects the base curve.
struct IndexTuple
{
    std::vector<uint64_t> h;
    bool operator==(IndexTuple const &) const = default;
};

/// M1*M2 entries in [0, L1], stored i-major: c[i*M2 + j].
struct ChallengeTuple
{
    std::vector<uint64_t> c;
    uint32_t M2 = 1;

    uint64_t at(uint32_t i, uint32_t j) const { return c[size_t(i) * M2 + j]; }
    bool operator==(ChallengeTuple const &o) const { return c == o.c; }
};

/// Reads `count` consecutive chunks of `bits` bits from a byte string,
/// least significant bit first.
std::vector<uint64_t> parse_chunks(ByteView stream, uint32_t bits, size_t count);
/// Inverse of parse_chunks; values must fit in `bits`.
Bytes pack_chunks(std::span<uint64_t const> values, uint32_t bits);

/// XOF(tag || pp || payload) squeezed into `count` chunks of `bits` bits.
std::vector<uint64_t> hash_to_chunks(std::string_view tag, ParamSet const &ps,
                                     ByteView payload, uint32_t bits, size_t count);

IndexTuple h1(ByteView payload, ParamSet const &ps);
ChallengeTuple h2(ByteView payload, ParamSet const &ps);

}
