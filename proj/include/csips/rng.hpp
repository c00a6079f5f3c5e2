#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace csips {

/// Random byte source. Either the OS CSPRNG or a deterministic SHAKE256
/// counter-mode stream keyed by a seed (tests and reproducible runs only).
class Rng
{
    public:
        static Rng system();
        static Rng seeded(std::span<uint8_t const> seed);
        static Rng seeded(uint64_t seed);

        bool deterministic() const { return _deterministic; }

        void fill(std::span<uint8_t> out);

        /// Uniform in [0, bound); bound > 0.
        uint64_t below(uint64_t bound);
        /// Uniform in [-bound, bound].
        int64_t symmetric(uint64_t bound);
        /// Uniform in [0, bound); bound > 0.
        mpz_class below(mpz_class const &bound);

        /// Independent child stream. Deterministic streams derive the child
        /// key from (key, label, fork index).
        Rng fork(std::string_view label);

    private:
        Rng() = default;
        void refill();

        bool _deterministic = false;
        std::array<uint8_t, 32> _key{};
        uint64_t _block = 0;
        uint64_t _forks = 0;
        std::vector<uint8_t> _buf;
        size_t _pos = 0;
};

}
