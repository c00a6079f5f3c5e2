#include "csips/rng.hpp"

#include <algorithm>
#include <stdexcept>

#include <openssl/rand.h>

#include "csips/hashing.hpp"

namespace csips {

namespace {

constexpr size_t kBlockBytes = 136;

std::array<uint8_t, 8> le64(uint64_t v)
{
    std::array<uint8_t, 8> b;
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<uint8_t>(v >> (8 * i));
    return b;
}

} // namespace

Rng Rng::system()
{
    Rng r;
    r._deterministic = false;
    return r;
}

Rng Rng::seeded(std::span<uint8_t const> seed)
{
    Rng r;
    r._deterministic = true;
    auto k = shake256({as_bytes("CSI-PS/RNG"), seed}, 32);
    std::copy(k.begin(), k.end(), r._key.begin());
    return r;
}

Rng Rng::seeded(uint64_t seed)
{
    auto b = le64(seed);
    return seeded(std::span<uint8_t const>(b));
}

void Rng::refill()
{
    auto ctr = le64(_block++);
    _buf = shake256({_key, ctr}, kBlockBytes);
    _pos = 0;
}

void Rng::fill(std::span<uint8_t> out)
{
    if (!_deterministic) {
        if (!out.empty() && RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
            throw std::runtime_error("system RNG failure");
        return;
    }
    size_t done = 0;
    while (done < out.size()) {
        if (_pos >= _buf.size())
            refill();
        size_t take = std::min(out.size() - done, _buf.size() - _pos);
        std::copy_n(_buf.begin() + static_cast<long>(_pos), take, out.begin() + static_cast<long>(done));
        _pos += take;
        done += take;
    }
}

uint64_t Rng::below(uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("empty sampling range");
    if (bound == 1)
        return 0;
    int bits = 64 - __builtin_clzll(bound - 1);
    uint64_t mask = bits == 64 ? ~uint64_t(0) : (uint64_t(1) << bits) - 1;
    for (;;) {
        std::array<uint8_t, 8> b;
        fill(b);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= uint64_t(b[i]) << (8 * i);
        v &= mask;
        if (v < bound)
            return v;
    }
}

int64_t Rng::symmetric(uint64_t bound)
{
    return static_cast<int64_t>(below(2 * bound + 1)) - static_cast<int64_t>(bound);
}

mpz_class Rng::below(mpz_class const &bound)
{
    if (bound <= 0)
        throw std::invalid_argument("empty sampling range");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    std::vector<uint8_t> b((bits + 7) / 8);
    for (;;) {
        fill(b);
        if (bits % 8)
            b.back() &= static_cast<uint8_t>((1u << (bits % 8)) - 1);
        mpz_class v;
        mpz_import(v.get_mpz_t(), b.size(), -1, 1, -1, 0, b.data());
        if (v < bound)
            return v;
    }
}

Rng Rng::fork(std::string_view label)
{
    Rng child;
    child._deterministic = _deterministic;
    if (_deterministic) {
        auto idx = le64(_forks++);
        auto k = shake256({as_bytes("CSI-PS/RNG-FORK"), _key, idx, as_bytes(label)}, 32);
        std::copy(k.begin(), k.end(), child._key.begin());
    }
    return child;
}

}
