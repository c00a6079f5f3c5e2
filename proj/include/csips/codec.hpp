#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "csips/hashing.hpp"
#include "csips/isogeny.hpp"
#include "csips/params.hpp"

namespace csips {

/// Malformed or non-canonical encoding.
class DecodeError : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/// LSB-first bit packer; the last byte is zero-padded.
class BitWriter
{
    public:
        void put(uint64_t v, uint32_t bits);
        void put(mpz_class const &v, uint64_t bits);
        Bytes finish() const { return _out; }
        uint64_t bit_length() const { return _pos; }

    private:
        Bytes _out;
        uint64_t _pos = 0;
};

class BitReader
{
    public:
        explicit BitReader(ByteView in) : _in(in) {}
        uint64_t get(uint32_t bits);
        mpz_class get_mpz(uint64_t bits);
        /// Throws unless everything after the cursor is zero padding
        /// within the final byte.
        void finish() const;

    private:
        bool bit(uint64_t pos) const { return (_in[pos / 8] >> (pos % 8)) & 1; }

        ByteView _in;
        uint64_t _pos = 0;
};

/// Bits per curve coefficient on the wire: enough for any residue mod p.
uint32_t curve_bits(ParamSet const &ps);

/// Exponent vector with entries in [-B, B] as one radix-(2B+1) integer of
/// vector_bits(n, B) bits.
void put_vector(BitWriter &w, ExponentVector const &v, uint64_t bound);
ExponentVector get_vector(BitReader &r, uint32_t n, uint64_t bound);

void put_curve(BitWriter &w, ParamSet const &ps, MontCurve const &E);
MontCurve get_curve(BitReader &r, ParamSet const &ps);

/// Byte-aligned little-endian helpers for hash payloads and envelopes.
void append_u64(Bytes &out, uint64_t v);
void append_bytes(Bytes &out, ByteView b);
/// u64 length followed by the bytes.
void append_field(Bytes &out, ByteView b);
uint64_t read_u64(ByteView in, size_t &pos);
Bytes read_field(ByteView in, size_t &pos);

enum class Kind : uint8_t
{
    public_key = 1,
    secret_key_original = 2,
    secret_key_proxy = 3,
    proxy_share = 4,
    proxy_signature = 5,
    warrant = 6,
};

std::string_view kind_name(Kind k);

/// "CSPS" | version | kind | paramset name | paramset fingerprint | payload.
struct Envelope
{
    static constexpr uint8_t kVersion = 1;

    Kind kind;
    std::string paramset;
    Bytes fingerprint;  // 8 bytes
    Bytes payload;

    static Envelope wrap(Kind kind, ParamSet const &ps, Bytes payload);

    Bytes encode() const;
    static Envelope decode(ByteView in);

    /// Throws DecodeError unless kind and parameters match.
    void expect(Kind k, ParamSet const &ps) const;
};

Bytes paramset_fingerprint(ParamSet const &ps);

std::string to_hex(ByteView b);
Bytes from_hex(std::string_view s);

/// Text envelope: BEGIN/END lines around 64-column hex.
std::string armor(Envelope const &e);
Envelope dearmor(std::string_view text);

}
