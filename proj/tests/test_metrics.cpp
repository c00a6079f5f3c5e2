#include <doctest.h>

#include <cmath>

#include "csips/isogeny.hpp"
#include "csips/metrics.hpp"
#include "csips/rng.hpp"
#include "csips/scheme.hpp"

using namespace csips;

TEST_CASE("action counts per phase")
{
    auto ps = paramset_csidh512(16, 8, 8, 2);
    CHECK(CostModel::action_count(ps, Phase::keygen) == 65535);
    CHECK(CostModel::action_count(ps, Phase::share_generate) == 16);
    CHECK(CostModel::action_count(ps, Phase::share_verify) == 16);
    CHECK(CostModel::action_count(ps, Phase::sign) == 16);
    CHECK(CostModel::action_count(ps, Phase::sign_verify) == 32);
}

TEST_CASE("projected totals are exact products")
{
    auto ps = paramset_csidh512(16, 8, 8, 2);
    CostModel cm{282424, 1.0};
    auto rows = project_totals(cm, ps);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].phase == Phase::keygen);
    CHECK(rows[0].mults == 18508656840ull);
    CHECK(rows[1].mults == 4518784ull);
    CHECK(rows[4].mults == 2 * 4518784ull);

    // unit cost reproduces the raw action counts
    for (auto const &r : project_totals(CostModel{1, 1.0}, ps))
        CHECK(r.mults == CostModel::action_count(ps, r.phase));

    // the retry factor scales the generation phases only
    auto scaled = project_totals(CostModel{1000, 2.5}, ps);
    CHECK(scaled[1].mults == 40000);
    CHECK(scaled[3].mults == 40000);
    CHECK(scaled[2].mults == 16000);
    CHECK(scaled[0].retry == 1.0);
}

TEST_CASE("acceptance probability closed form")
{
    CHECK(batch_acceptance_probability(paramset_toy()) == doctest::Approx(std::pow(13.0 / 15.0, 12)));
    auto ps = paramset_csidh512(16, 8, 8, 2);
    REQUIRE(ps.I1 == 754800);
    // per coordinate 1 - 2 I0 / (2 (I0 + I1) + 1), 74 * 16 coordinates
    double oracle = std::exp(74.0 * 16 * std::log1p(-10.0 / (2.0 * (5 + 754800) + 1)));
    CHECK(batch_acceptance_probability(ps) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("measured action cost on the toy set")
{
    auto toy = paramset_toy();
    auto rng = Rng::seeded(80);
    auto s = measure_action_cost(toy, 30, rng);
    CHECK(s.trials == 30);
    CHECK(s.min > 0);
    CHECK(s.min <= s.mean);
    CHECK(s.mean <= s.max);

    // the zero vector needs no point sampling at all
    auto rng2 = Rng::seeded(81);
    OpCounter c;
    group_action(toy, base_curve(toy), ExponentVector::zero(toy.n), rng2, &c);
    CHECK(c.mults() == 0);
    CHECK_THROWS(measure_action_cost(toy, 0, rng));
}

TEST_CASE("threaded keygen accumulates into one counter")
{
    auto toy = paramset_toy();
    auto r1 = Rng::seeded(82);
    OpCounter total;
    keygen(toy, Role::original, r1, {.threads = 2, .counter = &total});
    CHECK(total.mults() > 0);
    CHECK(total.sqr > 0);
}
