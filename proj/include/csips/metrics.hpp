#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csips/params.hpp"

namespace csips {

class Rng;

struct ActionCostStats
{
    uint64_t trials = 0;
    double mean = 0;
    uint64_t min = 0, max = 0;
    double mean_seconds = 0;
};

/// Runs `trials` group actions on E_0 with uniform vectors in
/// [-bound, bound]^n (bound defaults to I0) and counts multiplications.
ActionCostStats measure_action_cost(ParamSet const &ps, uint64_t trials, Rng &rng,
                                    int64_t bound = -1);

enum class Phase
{
    keygen,
    share_generate,
    share_verify,
    sign,
    sign_verify,
};

char const *phase_name(Phase p);

/// Field multiplications per scheme phase.
struct CostModel
{
    uint64_t per_action_mults = 0;
    double retry_factor = 1.0;  // mean attempts for the two generation phases

    /// Group actions per phase for one run (one attempt for generation).
    static uint64_t action_count(ParamSet const &ps, Phase p);
};

struct CostRow
{
    Phase phase;
    uint64_t actions = 0;
    double retry = 1.0;
    uint64_t mults = 0;
};

/// Totals = per_action * actions * retry (retry applies to generation
/// phases only). Exact integer arithmetic when the retry factor is 1.
std::vector<CostRow> project_totals(CostModel const &cm, ParamSet const &ps);

/// Acceptance probability of one share/signature attempt:
/// ((2 I1 + 1) / (2 (I0 + I1) + 1))^(n M1 M2).
double batch_acceptance_probability(ParamSet const &ps);

}
