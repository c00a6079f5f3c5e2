#include <doctest.h>

#include <cstring>
#include <sstream>

#include "csips/codec.hpp"
#include "csips/rng.hpp"

using namespace csips;

namespace {

// Reference radix packing: sum (a_i + B) (2B+1)^i, then LSB-first bytes.
Bytes oracle_vector_bytes(std::vector<int64_t> const &a, uint64_t B)
{
    mpz_class acc = 0, w = 1, radix = 2 * B + 1;
    for (auto x : a) {
        acc += w * mpz_class(x + static_cast<int64_t>(B));
        w *= radix;
    }
    auto bits = vector_bits(static_cast<uint32_t>(a.size()), B);
    Bytes out((bits + 7) / 8, 0);
    for (size_t k = 0; k < out.size(); ++k) {
        mpz_class byte = (acc >> static_cast<mp_bitcnt_t>(8 * k)) & 0xff;
        out[k] = static_cast<uint8_t>(byte.get_ui());
    }
    return out;
}

} // namespace

TEST_CASE("bit writer and reader round trip mixed widths")
{
    auto rng = Rng::seeded(60);
    for (int t = 0; t < 200; ++t) {
        BitWriter w;
        std::vector<std::pair<uint64_t, uint32_t>> items;
        for (int k = 0, cnt = 1 + static_cast<int>(rng.below(12)); k < cnt; ++k) {
            uint32_t bits = 1 + static_cast<uint32_t>(rng.below(64));
            uint8_t raw[8];
            rng.fill(raw);
            uint64_t v = 0;
            std::memcpy(&v, raw, 8);
            if (bits < 64)
                v &= (uint64_t(1) << bits) - 1;
            items.emplace_back(v, bits);
            w.put(v, bits);
        }
        auto b = w.finish();
        CHECK(b.size() == (w.bit_length() + 7) / 8);
        BitReader r(b);
        for (auto [v, bits] : items)
            CHECK(r.get(bits) == v);
        CHECK_NOTHROW(r.finish());
    }
}

TEST_CASE("bit order is least significant first")
{
    BitWriter w;
    w.put(1, 1);
    w.put(0, 1);
    w.put(0b101, 3);
    CHECK(w.finish() == Bytes{0b00010101});
    CHECK_THROWS_AS(w.put(4, 2), std::invalid_argument);
}

TEST_CASE("reader rejects padding and trailing bytes")
{
    BitWriter w;
    w.put(5, 3);
    auto b = w.finish();
    {
        BitReader r(b);
        r.get(3);
        CHECK_NOTHROW(r.finish());
    }
    auto dirty = b;
    dirty[0] |= 0x80;
    {
        BitReader r(dirty);
        r.get(3);
        CHECK_THROWS_AS(r.finish(), DecodeError);
    }
    auto longer = b;
    longer.push_back(0);
    {
        BitReader r(longer);
        r.get(3);
        CHECK_THROWS_AS(r.finish(), DecodeError);
    }
    BitReader r(b);
    CHECK_THROWS_AS(r.get(9), DecodeError);
}

TEST_CASE("vectors: encoding matches the radix oracle and round trips")
{
    auto rng = Rng::seeded(61);
    for (uint64_t B : {1ull, 4ull, 5ull, 21ull, 180ull, 1000ull}) {
        for (uint32_t n : {1u, 3u, 74u}) {
            for (int t = 0; t < 20; ++t) {
                auto v = ExponentVector::sample(n, B, rng);
                if (t == 0)
                    std::fill(v.a.begin(), v.a.end(), static_cast<int64_t>(B));
                if (t == 1)
                    std::fill(v.a.begin(), v.a.end(), -static_cast<int64_t>(B));
                BitWriter w;
                put_vector(w, v, B);
                auto b = w.finish();
                CHECK(b == oracle_vector_bytes(v.a, B));
                BitReader r(b);
                CHECK(get_vector(r, n, B) == v);
                r.finish();
            }
        }
    }
}

TEST_CASE("vectors: out-of-range integers are rejected")
{
    // n = 1, B = 2: five values fit in 3 bits; 5, 6, 7 are non-canonical
    for (uint64_t x = 5; x < 8; ++x) {
        BitWriter w;
        w.put(x, 3);
        auto b = w.finish();
        BitReader r(b);
        CHECK_THROWS_AS(get_vector(r, 1, 2), DecodeError);
    }
    ExponentVector v{{3}, 3};
    BitWriter w;
    CHECK_THROWS_AS(put_vector(w, v, 2), std::invalid_argument);
}

TEST_CASE("curves: unreduced coefficients are rejected")
{
    auto toy = paramset_toy();
    CHECK(curve_bits(toy) == 9);
    auto big = paramset_csidh512(16, 8, 8, 2);
    CHECK(curve_bits(big) == 511);
    for (uint64_t e : {419ull, 500ull, 511ull}) {
        BitWriter w;
        w.put(e, 9);
        auto b = w.finish();
        BitReader r(b);
        CHECK_THROWS_AS(get_curve(r, toy), DecodeError);
    }
    BitWriter w;
    put_curve(w, toy, MontCurve{Fp(418)});
    auto b = w.finish();
    BitReader r(b);
    CHECK(get_curve(r, toy) == MontCurve{Fp(418)});
}

TEST_CASE("length-prefixed fields")
{
    Bytes out;
    append_field(out, as_bytes("abc"));
    append_u64(out, 0x0102030405060708ull);
    CHECK(out.size() == 8 + 3 + 8);
    CHECK(out[0] == 3);
    CHECK(out[11] == 0x08);
    size_t pos = 0;
    CHECK(read_field(out, pos) == Bytes{'a', 'b', 'c'});
    CHECK(read_u64(out, pos) == 0x0102030405060708ull);
    CHECK(pos == out.size());
    Bytes bad;
    append_u64(bad, 100);
    pos = 0;
    CHECK_THROWS_AS(read_field(bad, pos), DecodeError);
}

TEST_CASE("envelope round trip and mismatch detection")
{
    auto toy = paramset_toy(), wide = paramset_toy_wide();
    auto e = Envelope::wrap(Kind::proxy_share, toy, {1, 2, 3});
    auto b = e.encode();
    CHECK(b.size() == 4 + 1 + 1 + 1 + toy.name.size() + 8 + 8 + 3);
    auto d = Envelope::decode(b);
    CHECK(d.kind == Kind::proxy_share);
    CHECK(d.payload == Bytes{1, 2, 3});
    CHECK_NOTHROW(d.expect(Kind::proxy_share, toy));
    CHECK_THROWS_AS(d.expect(Kind::proxy_signature, toy), DecodeError);
    CHECK_THROWS_AS(d.expect(Kind::proxy_share, wide), DecodeError);

    // same name, different content: the fingerprint catches it
    auto fake = wide;
    fake.name = toy.name;
    CHECK_THROWS_AS(d.expect(Kind::proxy_share, fake), DecodeError);

    auto bad = b;
    bad[0] = 'X';
    CHECK_THROWS_AS(Envelope::decode(bad), DecodeError);
    bad = b;
    bad[4] = 2;
    CHECK_THROWS_AS(Envelope::decode(bad), DecodeError);
    bad = b;
    bad[5] = 99;
    CHECK_THROWS_AS(Envelope::decode(bad), DecodeError);
    bad = b;
    bad.push_back(0);
    CHECK_THROWS_AS(Envelope::decode(bad), DecodeError);
    bad = b;
    bad.pop_back();
    CHECK_THROWS_AS(Envelope::decode(bad), DecodeError);
}

TEST_CASE("hex and armor")
{
    CHECK(to_hex(Bytes{0x00, 0xab, 0x10}) == "00ab10");
    CHECK(from_hex("00AB10") == Bytes{0x00, 0xab, 0x10});
    CHECK_THROWS_AS(from_hex("abc"), DecodeError);
    CHECK_THROWS_AS(from_hex("zz"), DecodeError);

    auto toy = paramset_toy();
    Bytes payload(100);
    for (size_t i = 0; i < payload.size(); ++i)
        payload[i] = static_cast<uint8_t>(i * 7);
    auto e = Envelope::wrap(Kind::public_key, toy, payload);
    auto text = armor(e);
    CHECK(text.rfind("-----BEGIN CSI-PS PUBLIC KEY-----\n", 0) == 0);
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line))
        if (line[0] != '-')
            CHECK(line.size() <= 64);
    auto back = dearmor(text);
    CHECK(back.payload == payload);
    CHECK(back.kind == Kind::public_key);

    auto relabelled = text;
    for (auto pos = relabelled.find("PUBLIC KEY"); pos != std::string::npos;
         pos = relabelled.find("PUBLIC KEY", pos + 1))
        relabelled.replace(pos, 10, "PROXY SHARE");
    CHECK_THROWS_AS(dearmor(relabelled), DecodeError);
    CHECK_THROWS_AS(dearmor("garbage"), DecodeError);
    CHECK_THROWS_AS(dearmor(text.substr(0, text.size() / 2)), DecodeError);
}
