#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace csips {

class Rng;

/// Per-task operation counter. Squarings count as multiplications in
/// mults(); pass one to a Field to instrument it, merge after joining.
struct OpCounter
{
    uint64_t mul = 0;
    uint64_t sqr = 0;

    uint64_t mults() const { return mul + sqr; }
    void reset() { mul = sqr = 0; }
    OpCounter &operator+=(OpCounter const &o)
    {
        mul += o.mul;
        sqr += o.sqr;
        return *this;
    }
};

/// Element of F_p as its least non-negative residue. Carries no modulus;
/// only combine elements produced by the same Field.
class Fp
{
    public:
        Fp() = default;
        explicit Fp(mpz_class v) : _v(std::move(v)) {}

        mpz_class const &value() const { return _v; }
        bool is_zero() const { return _v == 0; }
        bool is_one() const { return _v == 1; }

        bool operator==(Fp const &o) const { return _v == o._v; }
        bool operator!=(Fp const &o) const { return _v != o._v; }

    private:
        mpz_class _v;
};

/// Arithmetic context for one prime. Copies share the modulus data; each
/// copy may point at its own counter.
class Field
{
    public:
        explicit Field(mpz_class p, OpCounter *counter = nullptr);

        Field with_counter(OpCounter *counter) const
        {
            Field f = *this;
            f._counter = counter;
            return f;
        }
        OpCounter *counter() const { return _counter; }

        mpz_class const &p() const { return _mod->p; }

        Fp from(mpz_class const &v) const;
        Fp from_int(long v) const { return from(mpz_class(v)); }
        Fp zero() const { return Fp(0); }
        Fp one() const { return Fp(1); }

        Fp add(Fp const &a, Fp const &b) const;
        Fp sub(Fp const &a, Fp const &b) const;
        Fp neg(Fp const &a) const;
        Fp mul(Fp const &a, Fp const &b) const;
        Fp sqr(Fp const &a) const;
        Fp pow(Fp const &a, mpz_class const &e) const;

        /// Throws std::domain_error on zero.
        Fp inv(Fp const &a) const;

        /// a^((p-1)/2) mapped to {-1, 0, +1}.
        int legendre(Fp const &a) const;

        /// The square root with even canonical representative; p = 3 mod 4.
        /// Throws std::domain_error if a is a non-residue.
        Fp sqrt(Fp const &a) const;

        Fp random(Rng &rng) const;

        /// Fixed-width little-endian encoding.
        std::vector<uint8_t> encode(Fp const &a, size_t width) const;
        /// Throws std::invalid_argument if the value is not below p.
        Fp decode(std::span<uint8_t const> bytes) const;

    private:
        struct Modulus
        {
            mpz_class p;
            mpz_class legendre_exp;  // (p-1)/2
            mpz_class sqrt_exp;      // (p+1)/4
            mpz_class inv_exp;       // p-2
        };

        std::shared_ptr<Modulus const> _mod;
        OpCounter *_counter = nullptr;
};

/// Byte width of the canonical field encoding for a given bit length.
inline size_t field_bytes(uint32_t log_p_bits) { return (log_p_bits + 7) / 8; }

}
