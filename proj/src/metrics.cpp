#include "csips/metrics.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csips/isogeny.hpp"
#include "csips/rng.hpp"

namespace csips {

ActionCostStats measure_action_cost(ParamSet const &ps, uint64_t trials, Rng &rng, int64_t bound)
{
    if (trials == 0)
        throw std::invalid_argument("need at least one trial");
    uint64_t B = bound < 0 ? ps.I0 : static_cast<uint64_t>(bound);
    ActionCostStats s;
    s.trials = trials;
    s.min = std::numeric_limits<uint64_t>::max();
    double sum = 0, secs = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        auto v = ExponentVector::sample(ps.n, B, rng);
        OpCounter c;
        auto start = std::chrono::steady_clock::now();
        group_action(ps, base_curve(ps), v, rng, &c);
        secs += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        sum += static_cast<double>(c.mults());
        s.min = std::min(s.min, c.mults());
        s.max = std::max(s.max, c.mults());
    }
    s.mean = sum / static_cast<double>(trials);
    s.mean_seconds = secs / static_cast<double>(trials);
    return s;
}

char const *phase_name(Phase p)
{
    switch (p) {
    case Phase::keygen: return "public key";
    case Phase::share_generate: return "proxy share";
    case Phase::share_verify: return "proxy share verification";
    case Phase::sign: return "proxy signature";
    case Phase::sign_verify: return "proxy signature verification";
    }
    return "?";
}

uint64_t CostModel::action_count(ParamSet const &ps, Phase p)
{
    uint64_t mm = ps.challenge_count();
    switch (p) {
    case Phase::keygen: return ps.L0;
    case Phase::share_generate:
    case Phase::sign:
    case Phase::share_verify: return mm;
    case Phase::sign_verify: return 2 * mm;
    }
    return 0;
}

std::vector<CostRow> project_totals(CostModel const &cm, ParamSet const &ps)
{
    std::vector<CostRow> rows;
    for (auto p : {Phase::keygen, Phase::share_generate, Phase::share_verify, Phase::sign,
                   Phase::sign_verify}) {
        CostRow r{p, CostModel::action_count(ps, p), 1.0, 0};
        if (p == Phase::share_generate || p == Phase::sign)
            r.retry = cm.retry_factor;
        unsigned __int128 exact = static_cast<unsigned __int128>(cm.per_action_mults) * r.actions;
        if (r.retry == 1.0) {
            if (exact > std::numeric_limits<uint64_t>::max())
                throw std::overflow_error("cost total overflows 64 bits");
            r.mults = static_cast<uint64_t>(exact);
        } else {
            r.mults = static_cast<uint64_t>(std::llround(static_cast<long double>(exact) * r.retry));
        }
        rows.push_back(r);
    }
    return rows;
}

double batch_acceptance_probability(ParamSet const &ps)
{
    double ratio = (2.0 * ps.I1 + 1) / (2.0 * (ps.I0 + ps.I1) + 1);
    return std::pow(ratio, static_cast<double>(ps.n) * ps.challenge_count());
}

}
