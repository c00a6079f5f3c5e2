#include "csips/codec.hpp"

#include <algorithm>
#include <sstream>

namespace csips {

void BitWriter::put(uint64_t v, uint32_t bits)
{
    if (bits > 64 || (bits < 64 && (v >> bits) != 0))
        throw std::invalid_argument("value does not fit the bit width");
    for (uint32_t t = 0; t < bits; ++t, ++_pos) {
        if (_pos % 8 == 0)
            _out.push_back(0);
        if ((v >> t) & 1)
            _out.back() |= uint8_t(1u << (_pos % 8));
    }
}

void BitWriter::put(mpz_class const &v, uint64_t bits)
{
    if (v < 0 || (v != 0 && mpz_sizeinbase(v.get_mpz_t(), 2) > bits))
        throw std::invalid_argument("integer does not fit the bit width");
    for (uint64_t t = 0; t < bits; ++t, ++_pos) {
        if (_pos % 8 == 0)
            _out.push_back(0);
        if (mpz_tstbit(v.get_mpz_t(), t))
            _out.back() |= uint8_t(1u << (_pos % 8));
    }
}

uint64_t BitReader::get(uint32_t bits)
{
    if (bits > 64)
        throw std::invalid_argument("bit width above 64");
    if (_pos + bits > _in.size() * 8)
        throw DecodeError("truncated encoding");
    uint64_t v = 0;
    for (uint32_t t = 0; t < bits; ++t, ++_pos)
        if (bit(_pos))
            v |= uint64_t(1) << t;
    return v;
}

mpz_class BitReader::get_mpz(uint64_t bits)
{
    if (_pos + bits > _in.size() * 8)
        throw DecodeError("truncated encoding");
    mpz_class v = 0;
    for (uint64_t t = 0; t < bits; ++t, ++_pos)
        if (bit(_pos))
            mpz_setbit(v.get_mpz_t(), t);
    return v;
}

void BitReader::finish() const
{
    if ((_pos + 7) / 8 != _in.size())
        throw DecodeError("trailing bytes after encoding");
    for (uint64_t q = _pos; q < _in.size() * 8; ++q)
        if (bit(q))
            throw DecodeError("non-zero padding bits");
}

uint32_t curve_bits(ParamSet const &ps)
{
    auto need = static_cast<uint32_t>(mpz_sizeinbase(ps.p.get_mpz_t(), 2));
    return std::max(need, ps.log_p_bits);
}

void put_vector(BitWriter &w, ExponentVector const &v, uint64_t bound)
{
    if (!v.within(bound))
        throw std::invalid_argument("exponent vector outside its bound");
    mpz_class radix = 2 * mpz_class(static_cast<unsigned long>(bound)) + 1;
    mpz_class acc = 0;
    for (size_t i = v.size(); i-- > 0;) {
        acc *= radix;
        acc += mpz_class(static_cast<long>(v.a[i])) + static_cast<unsigned long>(bound);
    }
    w.put(acc, vector_bits(static_cast<uint32_t>(v.size()), bound));
}

ExponentVector get_vector(BitReader &r, uint32_t n, uint64_t bound)
{
    auto acc = r.get_mpz(vector_bits(n, bound));
    mpz_class radix = 2 * mpz_class(static_cast<unsigned long>(bound)) + 1;
    ExponentVector v{std::vector<int64_t>(n), bound};
    for (uint32_t i = 0; i < n; ++i) {
        mpz_class digit;
        mpz_fdiv_qr(acc.get_mpz_t(), digit.get_mpz_t(), acc.get_mpz_t(), radix.get_mpz_t());
        v.a[i] = static_cast<int64_t>(digit.get_ui()) - static_cast<int64_t>(bound);
    }
    if (acc != 0)
        throw DecodeError("exponent vector encoding out of range");
    return v;
}

void put_curve(BitWriter &w, ParamSet const &ps, MontCurve const &E)
{
    w.put(E.e.value(), curve_bits(ps));
}

MontCurve get_curve(BitReader &r, ParamSet const &ps)
{
    auto e = r.get_mpz(curve_bits(ps));
    if (e >= ps.p)
        throw DecodeError("curve coefficient not reduced mod p");
    return {Fp(std::move(e))};
}

void append_u64(Bytes &out, uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void append_bytes(Bytes &out, ByteView b)
{
    out.insert(out.end(), b.begin(), b.end());
}

void append_field(Bytes &out, ByteView b)
{
    append_u64(out, b.size());
    append_bytes(out, b);
}

uint64_t read_u64(ByteView in, size_t &pos)
{
    if (in.size() < pos + 8)
        throw DecodeError("truncated integer");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= uint64_t(in[pos + i]) << (8 * i);
    pos += 8;
    return v;
}

Bytes read_field(ByteView in, size_t &pos)
{
    auto len = read_u64(in, pos);
    if (len > in.size() - pos)
        throw DecodeError("truncated field");
    Bytes b(in.begin() + static_cast<long>(pos), in.begin() + static_cast<long>(pos + len));
    pos += len;
    return b;
}

std::string_view kind_name(Kind k)
{
    switch (k) {
    case Kind::public_key: return "PUBLIC KEY";
    case Kind::secret_key_original: return "ORIGINAL SECRET KEY";
    case Kind::secret_key_proxy: return "PROXY SECRET KEY";
    case Kind::proxy_share: return "PROXY SHARE";
    case Kind::proxy_signature: return "PROXY SIGNATURE";
    case Kind::warrant: return "WARRANT";
    }
    throw DecodeError("unknown artifact kind");
}

Bytes paramset_fingerprint(ParamSet const &ps)
{
    return shake256({as_bytes("CSI-PS/params"), ps.encode()}, 8);
}

Envelope Envelope::wrap(Kind kind, ParamSet const &ps, Bytes payload)
{
    return {kind, ps.name, paramset_fingerprint(ps), std::move(payload)};
}

Bytes Envelope::encode() const
{
    if (paramset.size() > 255)
        throw std::invalid_argument("parameter set name too long");
    Bytes out = {'C', 'S', 'P', 'S', kVersion, static_cast<uint8_t>(kind),
                 static_cast<uint8_t>(paramset.size())};
    append_bytes(out, as_bytes(paramset));
    append_bytes(out, fingerprint);
    append_field(out, payload);
    return out;
}

Envelope Envelope::decode(ByteView in)
{
    if (in.size() < 7 || in[0] != 'C' || in[1] != 'S' || in[2] != 'P' || in[3] != 'S')
        throw DecodeError("bad magic");
    if (in[4] != kVersion)
        throw DecodeError("unsupported envelope version " + std::to_string(in[4]));
    Envelope e;
    e.kind = static_cast<Kind>(in[5]);
    kind_name(e.kind);
    size_t name_len = in[6], pos = 7;
    if (in.size() < pos + name_len + 8)
        throw DecodeError("truncated envelope header");
    e.paramset.assign(reinterpret_cast<char const *>(in.data() + pos), name_len);
    pos += name_len;
    e.fingerprint.assign(in.begin() + static_cast<long>(pos), in.begin() + static_cast<long>(pos + 8));
    pos += 8;
    e.payload = read_field(in, pos);
    if (pos != in.size())
        throw DecodeError("trailing bytes after envelope");
    return e;
}

void Envelope::expect(Kind k, ParamSet const &ps) const
{
    if (kind != k)
        throw DecodeError("expected " + std::string(kind_name(k)) + ", found "
                          + std::string(kind_name(kind)));
    if (paramset != ps.name || fingerprint != paramset_fingerprint(ps))
        throw DecodeError("artifact belongs to parameter set '" + paramset + "', not '"
                          + ps.name + "'");
}

std::string to_hex(ByteView b)
{
    static char const digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(2 * b.size());
    for (auto c : b) {
        s.push_back(digits[c >> 4]);
        s.push_back(digits[c & 15]);
    }
    return s;
}

Bytes from_hex(std::string_view s)
{
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        throw DecodeError("invalid hex digit");
    };
    if (s.size() % 2)
        throw DecodeError("odd-length hex string");
    Bytes out(s.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
    return out;
}

std::string armor(Envelope const &e)
{
    auto name = std::string(kind_name(e.kind));
    auto hex = to_hex(e.encode());
    std::ostringstream out;
    out << "-----BEGIN CSI-PS " << name << "-----\n";
    for (size_t i = 0; i < hex.size(); i += 64)
        out << hex.substr(i, 64) << "\n";
    out << "-----END CSI-PS " << name << "-----\n";
    return out.str();
}

Envelope dearmor(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line, hex, begin, end;
    bool inside = false, done = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!inside) {
            if (line.rfind("-----BEGIN CSI-PS ", 0) != 0)
                throw DecodeError("missing BEGIN line");
            begin = line.substr(18);
            inside = true;
        } else if (line.rfind("-----END CSI-PS ", 0) == 0) {
            end = line.substr(16);
            done = true;
            break;
        } else {
            hex += line;
        }
    }
    if (!done || begin != end)
        throw DecodeError("unterminated or mismatched armor");
    auto e = Envelope::decode(from_hex(hex));
    if (begin != std::string(kind_name(e.kind)) + "-----")
        throw DecodeError("armor label does not match the envelope kind");
    return e;
}

}
