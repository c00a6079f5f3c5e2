#include "csips/params.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace csips {

namespace {

void put_u32(std::vector<uint8_t> &out, uint64_t v)
{
    if (v > 0xffffffffull)
        throw std::invalid_argument("parameter does not fit the 32-bit encoding");
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

bool is_prime(uint64_t v)
{
    if (v < 2)
        return false;
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

} // namespace

std::vector<uint8_t> ParamSet::encode() const
{
    std::vector<uint8_t> out;
    put_u32(out, n);
    for (auto l : small_primes)
        put_u32(out, l);
    put_u32(out, I0);
    put_u32(out, gamma0);
    put_u32(out, gamma1);
    put_u32(out, M1);
    put_u32(out, M2);
    put_u32(out, log_p_bits);
    return out;
}

void ParamSet::check_invariants() const
{
    if (n != small_primes.size() || n == 0)
        throw std::logic_error("n does not match the small prime list");
    for (size_t i = 0; i < small_primes.size(); ++i) {
        auto l = small_primes[i];
        if (l % 2 == 0 || !is_prime(l))
            throw std::logic_error("small prime " + std::to_string(l) + " is not an odd prime");
        for (size_t j = 0; j < i; ++j)
            if (small_primes[j] == l)
                throw std::logic_error("small primes are not distinct");
    }
    mpz_class prod = 4;
    for (auto l : small_primes)
        prod *= l;
    if (p != prod - 1)
        throw std::logic_error("p != 4*prod(l_i) - 1");
    if (mpz_class(p % 4) != 3)
        throw std::logic_error("p != 3 mod 4");
    if (mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
        throw std::logic_error("p is not prime");
    if (gamma0 == 0 || gamma1 == 0 || gamma0 > 63 || gamma1 > 63)
        throw std::logic_error("branch exponents out of range");
    if (L0 != (uint64_t(1) << gamma0) - 1 || L1 != (uint64_t(1) << gamma1) - 1)
        throw std::logic_error("L0/L1 do not match gamma0/gamma1");
    if (alpha0 != uint64_t(n) * M1 * L1 || I1 != alpha0 * I0)
        throw std::logic_error("alpha0/I1 do not match");
}

bool ParamSet::operator==(ParamSet const &o) const
{
    return name == o.name && small_primes == o.small_primes && p == o.p && I0 == o.I0
        && gamma0 == o.gamma0 && gamma1 == o.gamma1 && M1 == o.M1 && M2 == o.M2
        && log_p_bits == o.log_p_bits && insecure == o.insecure;
}

ParamSet make_paramset(std::string name, std::vector<uint32_t> small_primes,
                       uint64_t I0, uint32_t gamma0, uint32_t gamma1,
                       uint32_t M1, uint32_t M2, uint32_t log_p_bits,
                       bool insecure)
{
    if (M1 == 0 || M2 == 0)
        throw std::invalid_argument("M1 and M2 must be positive");
    if (gamma0 == 0 || gamma1 == 0 || gamma0 > 63 || gamma1 > 63)
        throw std::invalid_argument("gamma0/gamma1 must lie in [1, 63]");

    ParamSet ps;
    ps.name = std::move(name);
    ps.small_primes = std::move(small_primes);
    ps.n = static_cast<uint32_t>(ps.small_primes.size());
    ps.p = 4;
    for (auto l : ps.small_primes)
        ps.p *= l;
    ps.p -= 1;
    ps.I0 = I0;
    ps.gamma0 = gamma0;
    ps.gamma1 = gamma1;
    ps.L0 = (uint64_t(1) << gamma0) - 1;
    ps.L1 = (uint64_t(1) << gamma1) - 1;
    ps.M1 = M1;
    ps.M2 = M2;
    ps.alpha0 = uint64_t(ps.n) * M1 * ps.L1;
    ps.I1 = ps.alpha0 * I0;
    ps.log_p_bits = log_p_bits;
    ps.insecure = insecure;

    try {
        ps.check_invariants();
    } catch (std::logic_error const &e) {
        throw std::invalid_argument(e.what());
    }
    return ps;
}

ParamSet paramset_toy()
{
    return make_paramset("toy", {3, 5, 7}, 1, 2, 1, 2, 2, 9, true);
}

ParamSet paramset_toy_wide()
{
    return make_paramset("toy-wide", {3, 5, 7}, 1, 2, 4, 4, 8, 9, true);
}

std::vector<uint32_t> csidh512_primes()
{
    std::vector<uint32_t> ls;
    for (uint32_t v = 3; ls.size() < 73; v += 2)
        if (is_prime(v))
            ls.push_back(v);
    ls.push_back(587);
    return ls;
}

ParamSet paramset_csidh512(uint32_t gamma0, uint32_t gamma1, uint32_t M1, uint32_t M2)
{
    constexpr uint64_t lambda = 128;
    if (uint64_t(gamma0) * M1 < lambda || uint64_t(gamma1) * M1 * M2 < lambda)
        throw std::invalid_argument("parameters violate M1*gamma0 >= 128 and M1*M2*gamma1 >= 128");
    auto name = "csidh512-" + std::to_string(gamma0) + "-" + std::to_string(gamma1) + "-"
              + std::to_string(M1) + "-" + std::to_string(M2);
    return make_paramset(std::move(name), csidh512_primes(), 5, gamma0, gamma1, M1, M2, 510, false);
}

ParamSet paramset_by_name(std::string const &name)
{
    if (name == "toy")
        return paramset_toy();
    if (name == "toy-wide")
        return paramset_toy_wide();
    if (name.rfind("csidh512-", 0) == 0) {
        std::istringstream in(name.substr(9));
        uint32_t v[4];
        char sep;
        for (int i = 0; i < 4; ++i) {
            if (!(in >> v[i]))
                throw std::invalid_argument("malformed parameter set name: " + name);
            if (i < 3 && !(in >> sep && sep == '-'))
                throw std::invalid_argument("malformed parameter set name: " + name);
        }
        if (!in.eof() && in.peek() != EOF)
            throw std::invalid_argument("malformed parameter set name: " + name);
        return paramset_csidh512(v[0], v[1], v[2], v[3]);
    }
    throw std::invalid_argument("unknown parameter set: " + name);
}

std::string paramset_to_config(ParamSet const &ps)
{
    nlohmann::ordered_json j;
    j["name"] = ps.name;
    j["small_primes"] = ps.small_primes;
    j["p"] = ps.p.get_str();
    j["n"] = ps.n;
    j["I0"] = ps.I0;
    j["gamma0"] = ps.gamma0;
    j["gamma1"] = ps.gamma1;
    j["L0"] = ps.L0;
    j["L1"] = ps.L1;
    j["M1"] = ps.M1;
    j["M2"] = ps.M2;
    j["alpha0"] = ps.alpha0;
    j["I1"] = ps.I1;
    j["log_p_bits"] = ps.log_p_bits;
    j["insecure"] = ps.insecure;
    return j.dump(2) + "\n";
}

ParamSet paramset_from_config(std::string const &text)
{
    auto j = nlohmann::json::parse(text);
    auto ps = make_paramset(j.at("name").get<std::string>(),
                            j.at("small_primes").get<std::vector<uint32_t>>(),
                            j.at("I0").get<uint64_t>(),
                            j.at("gamma0").get<uint32_t>(),
                            j.at("gamma1").get<uint32_t>(),
                            j.at("M1").get<uint32_t>(),
                            j.at("M2").get<uint32_t>(),
                            j.at("log_p_bits").get<uint32_t>(),
                            j.value("insecure", false));
    // derived fields are optional in the document but must agree when present
    auto agrees = [&](char const *key, uint64_t v) {
        return !j.contains(key) || j.at(key).get<uint64_t>() == v;
    };
    if ((j.contains("p") && mpz_class(j.at("p").get<std::string>()) != ps.p)
        || !agrees("n", ps.n) || !agrees("L0", ps.L0) || !agrees("L1", ps.L1)
        || !agrees("alpha0", ps.alpha0) || !agrees("I1", ps.I1))
        throw std::invalid_argument("config derived fields are inconsistent");
    return ps;
}

uint64_t vector_bits(uint32_t n, uint64_t bound)
{
    // (2B+1)^n is odd and > 1, so ceil(log2) equals its bit length
    mpz_class base = 2 * mpz_class(static_cast<unsigned long>(bound)) + 1;
    if (base == 1)
        return 0;
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), n);
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

SizeReport size_report(ParamSet const &ps)
{
    SizeReport r;
    r.pk_bits = ps.L0 * ps.log_p_bits;
    r.sk_bits = ps.L0 * vector_bits(ps.n, ps.I0);
    uint64_t mm = ps.challenge_count();
    r.share_bits = mm * ps.gamma1 + mm * vector_bits(ps.n, ps.I1);
    r.signature_bits = r.share_bits;
    return r;
}

}
