#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace csips {

/// Public parameters: the CSIDH prime p = 4*l_1*...*l_n - 1, the exponent
/// bounds and the branch/challenge shape. Immutable once built.
struct ParamSet
{
    std::string name;
    std::vector<uint32_t> small_primes;
    mpz_class p;
    uint32_t n = 0;

    uint64_t I0 = 0;
    uint32_t gamma0 = 0, gamma1 = 0;
    uint64_t L0 = 0, L1 = 0;
    uint32_t M1 = 0, M2 = 0;
    uint64_t alpha0 = 0;
    uint64_t I1 = 0;

    // stored, not derived from p (see README, size tables)
    uint32_t log_p_bits = 0;

    bool insecure = false;

    uint32_t challenge_count() const { return M1 * M2; }

    /// Canonical byte encoding absorbed by the hash functions.
    std::vector<uint8_t> encode() const;

    /// Re-derives every dependent field and compares; throws on mismatch.
    void check_invariants() const;

    bool operator==(ParamSet const &o) const;
};

/// Builds a set and derives dependent quantities; no security checks.
ParamSet make_paramset(std::string name, std::vector<uint32_t> small_primes,
                       uint64_t I0, uint32_t gamma0, uint32_t gamma1,
                       uint32_t M1, uint32_t M2, uint32_t log_p_bits,
                       bool insecure);

ParamSet paramset_toy();

/// Same prime as the toy set with a 128-bit challenge string (gamma1 = 4,
/// M1 = 4, M2 = 8), so a forged transcript passes the hash check only with
/// probability 2^-128. Still insecure: the key space is tiny.
ParamSet paramset_toy_wide();

/// CSIDH-512 prime with I0 = 5. Throws std::invalid_argument unless
/// gamma0*M1 >= 128 and gamma1*M1*M2 >= 128.
ParamSet paramset_csidh512(uint32_t gamma0, uint32_t gamma1, uint32_t M1, uint32_t M2);

/// The 74 small primes of CSIDH-512: 3..373 and 587.
std::vector<uint32_t> csidh512_primes();

/// Looks up a set by name: "toy", "toy-wide" or "csidh512-G0-G1-M1-M2".
ParamSet paramset_by_name(std::string const &name);

/// Human-readable config document (JSON); the loader re-derives and checks.
std::string paramset_to_config(ParamSet const &ps);
ParamSet paramset_from_config(std::string const &text);

struct SizeReport
{
    uint64_t pk_bits = 0;
    uint64_t sk_bits = 0;
    uint64_t share_bits = 0;
    uint64_t signature_bits = 0;

    double pk_bytes() const { return pk_bits / 8.0; }
    double sk_bytes() const { return sk_bits / 8.0; }
    double share_bytes() const { return share_bits / 8.0; }
    double signature_bytes() const { return signature_bits / 8.0; }

    static uint64_t padded(uint64_t bits) { return (bits + 7) / 8; }
};

/// ceil(n * log2(2*bound + 1)), computed exactly.
uint64_t vector_bits(uint32_t n, uint64_t bound);

SizeReport size_report(ParamSet const &ps);

}
