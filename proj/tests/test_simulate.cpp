#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pseudorank/simulate.hpp"

using namespace pseudorank;

namespace {

std::vector<DistributionSpec> dice()
{
    return {DiscreteDist::uniform({9, 16, 17, 20, 21, 22}),
            DiscreteDist::uniform({13, 14, 15, 18, 19, 26}),
            DiscreteDist::uniform({10, 11, 12, 23, 24, 25})};
}

} // namespace

TEST_CASE("sample: single support point")
{
    RngStream stream(1, 0);
    const DistributionSpec point = DiscreteDist({3.5}, std::vector<Rational>{Rational(1)});
    const auto v = sample(point, 5, stream);
    REQUIRE(v == std::vector<double>{3.5, 3.5, 3.5, 3.5, 3.5});
}

TEST_CASE("sample: die face frequencies obey the law of large numbers")
{
    RngStream stream(2, 0);
    const auto d1 = dice()[0];
    const std::size_t n = 600000;
    const auto v = sample(d1, n, stream);
    const auto& support = std::get<DiscreteDist>(d1).support;
    for (double face : support) {
        std::size_t hits = 0;
        for (double x : v) hits += (x == face);
        REQUIRE(static_cast<double>(hits) / static_cast<double>(n) ==
                Catch::Approx(1.0 / 6.0).margin(0.002));
    }
}

TEST_CASE("sample: normal mean within the CLT bound")
{
    RngStream stream(3, 0);
    const auto v = sample(NormalDist(0, 1), 100000, stream);
    double acc = 0.0;
    for (double x : v) acc += x;
    REQUIRE(acc / static_cast<double>(v.size()) == Catch::Approx(0.0).margin(0.02));
    double ss = 0.0;
    for (double x : v) ss += x * x;
    REQUIRE(ss / static_cast<double>(v.size()) == Catch::Approx(1.0).margin(0.02));
}

TEST_CASE("run is bitwise reproducible across thread counts")
{
    SimulationPlan plan;
    plan.specs = dice();
    plan.alloc = {40, 10, 20};
    plan.test.method = TestMethod::kruskal_wallis;
    plan.test.ranking = Ranking::ordinary;
    plan.alpha = 0.05;
    plan.reps = 200;
    plan.seed = 98765;
    plan.metric = Metric::rejection_rate;

    const auto r1 = run(plan, 1);
    const auto r2 = run(plan, 4);
    const auto r3 = run(plan, 1);
    REQUIRE(*r1.rejection_rate == *r2.rejection_rate);
    REQUIRE(*r1.rejection_rate == *r3.rejection_rate);
    REQUIRE(*r1.rejection_rate_se == *r2.rejection_rate_se);
    REQUIRE(r1.degenerate_count == r2.degenerate_count);
}

TEST_CASE("reps = 1 yields a rate in {0, 1}")
{
    SimulationPlan plan;
    plan.specs = dice();
    plan.alloc = {10, 10, 10};
    plan.test.method = TestMethod::kruskal_wallis;
    plan.reps = 1;
    plan.seed = 5;
    const auto r = run(plan);
    REQUIRE((*r.rejection_rate == 0.0 || *r.rejection_rate == 1.0));
    REQUIRE(*r.rejection_rate_se == 0.0);
}

TEST_CASE("dice equal allocation: ordinary KW level is near alpha")
{
    SimulationPlan plan;
    plan.specs = dice();
    plan.alloc = {200, 200, 200};
    plan.test.method = TestMethod::kruskal_wallis;
    plan.alpha = 0.05;
    plan.reps = 600;
    plan.seed = 616;
    const auto r = run(plan);
    // alpha* is close to alpha (the paper asserts closeness, not equality)
    REQUIRE(*r.rejection_rate > 0.02);
    REQUIRE(*r.rejection_rate < 0.14);
}

TEST_CASE("dice paradox: ordinary KW rate far exceeds pseudo KW rate when unbalanced")
{
    // thresholds pinned from the pilot run recorded in the build notes:
    // ordinary ~0.83, pseudo ~0.19 at this allocation and N
    SimulationPlan plan;
    plan.specs = dice();
    plan.alloc = {800, 100, 300};
    plan.test.method = TestMethod::kruskal_wallis;
    plan.alpha = 0.05;
    plan.reps = 500;
    plan.seed = 909;
    plan.metric = Metric::rejection_rate;

    plan.test.ranking = Ranking::ordinary;
    const auto ord = run(plan);
    plan.test.ranking = Ranking::pseudo;
    const auto pse = run(plan);
    REQUIRE(*ord.rejection_rate - *pse.rejection_rate >= 0.10);
    REQUIRE(*pse.rejection_rate <= 0.25);
}

TEST_CASE("trend sign frequencies flip between allocations B and C")
{
    SimulationPlan plan;
    plan.specs = dice();
    plan.test.method = TestMethod::hn_trend;
    plan.test.trend = std::vector<double>{1, 2, 3};
    plan.reps = 400;
    plan.seed = 33;
    plan.metric = Metric::sign_frequency;

    plan.alloc = {800, 100, 300}; // population c_hn = 1/16
    const auto b = run(plan);
    REQUIRE(*b.mean_numerator - 3.0 * *b.mean_numerator_se > 0.0);
    REQUIRE(*b.positive_rate > 0.9);

    plan.alloc = {300, 800, 100}; // population c_hn = -1/12
    const auto c = run(plan);
    REQUIRE(*c.mean_numerator + 3.0 * *c.mean_numerator_se < 0.0);
    REQUIRE(*c.negative_rate > 0.9);
}

TEST_CASE("coverage metric wires to ci_psi and the analytic truth")
{
    SimulationPlan plan;
    plan.specs = {NormalDist(0.0, 1.0), NormalDist(0.5, 1.0), NormalDist(1.0, 1.0)};
    plan.alloc = {30, 30, 30};
    plan.reps = 300;
    plan.seed = 2718;
    plan.metric = Metric::coverage;
    plan.level = 0.95;
    const auto r = run(plan);
    REQUIRE(r.coverage.has_value());
    REQUIRE(r.coverage->size() == 3);
    for (double c : *r.coverage) {
        REQUIRE(c > 0.88);
        REQUIRE(c <= 1.0);
    }
    REQUIRE(r.truth.has_value());
    // psi truth for three overlapping normals straddles 1/2 symmetrically
    REQUIRE((*r.truth)[1] == Catch::Approx(0.5).margin(1e-12));
    REQUIRE((*r.truth)[0] + (*r.truth)[2] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("degenerate replications are counted, not dropped")
{
    SimulationPlan plan;
    plan.specs = {DiscreteDist({1.0}, std::vector<Rational>{Rational(1)}),
                  DiscreteDist({1.0}, std::vector<Rational>{Rational(1)})};
    plan.alloc = {5, 5};
    plan.test.method = TestMethod::kruskal_wallis;
    plan.reps = 50;
    plan.seed = 1;
    const auto r = run(plan);
    REQUIRE(r.degenerate_count == 50);
    REQUIRE(*r.rejection_rate == 0.0);
}

TEST_CASE("plan validation")
{
    SimulationPlan plan;
    plan.specs = dice();
    plan.alloc = {10, 10};
    REQUIRE_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.alloc = {10, 10, 10};
    plan.reps = 0;
    REQUIRE_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.reps = 10;
    plan.alpha = 1.5;
    REQUIRE_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.alpha = 0.05;
    plan.test.method = TestMethod::hn_trend;
    REQUIRE_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.test.trend = std::vector<double>{1, 2, 3};
    REQUIRE_NOTHROW(plan.validate());
}

TEST_CASE("power monotonicity of the ordinary KW paradox in N")
{
    SimulationPlan plan;
    plan.specs = dice();
    plan.test.method = TestMethod::kruskal_wallis;
    plan.alpha = 0.05;
    plan.reps = 250;
    plan.seed = 14142;

    auto rate_at = [&](std::int64_t scale, Ranking ranking) {
        plan.alloc = {400 * scale, 50 * scale, 150 * scale};
        plan.test.ranking = ranking;
        return *run(plan).rejection_rate;
    };
    const double o1 = rate_at(1, Ranking::ordinary);  // N = 600
    const double o2 = rate_at(2, Ranking::ordinary);  // N = 1200
    const double o5 = rate_at(5, Ranking::ordinary);  // N = 3000
    const double mc = 3.0 * std::sqrt(0.25 / 250.0);
    REQUIRE(o2 >= o1 - mc);
    REQUIRE(o5 >= o2 - mc);
    REQUIRE(o5 > o1);

    const double p1 = rate_at(1, Ranking::pseudo);
    const double p5 = rate_at(5, Ranking::pseudo);
    REQUIRE(std::fabs(p5 - p1) < 0.05 + 2.0 * mc);
}
