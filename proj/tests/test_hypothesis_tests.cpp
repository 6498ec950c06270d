#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "pseudorank/hypothesis_tests.hpp"
#include "pseudorank/simulate.hpp"
#include "pseudorank/special_functions.hpp"

using namespace pseudorank;

namespace {

GroupedData two_by_two(std::array<std::vector<double>, 4> cells)
{
    return make_two_by_two(std::move(cells));
}

} // namespace

TEST_CASE("kruskal-wallis hand evaluation on six untied observations")
{
    auto data = make_grouped({{1, 2}, {3, 4}, {5, 6}});
    auto r = kruskal_wallis(data);
    // ranks 1..6: numerator 2*(2^2 + 0 + 2^2) = 16, denominator 17.5
    const double h = 5.0 * 16.0 / 17.5;
    REQUIRE(r.statistic == Catch::Approx(h).margin(1e-12));
    REQUIRE(r.df == 2.0);
    REQUIRE(r.p_value == Catch::Approx(std::exp(-0.5 * h)).margin(1e-10));
    REQUIRE_FALSE(r.degenerate);
}

TEST_CASE("kruskal-wallis: balanced data gives identical ordinary and pseudo reports")
{
    RngStream stream(31, 7);
    std::vector<std::vector<double>> groups(3);
    for (auto& g : groups)
        for (int k = 0; k < 12; ++k)
            g.push_back(static_cast<double>(stream.next_u64() % 5));
    auto data = make_grouped(std::move(groups));
    auto ord = kruskal_wallis(data, Ranking::ordinary);
    auto pse = kruskal_wallis(data, Ranking::pseudo);
    REQUIRE(ord.statistic == pse.statistic);
    REQUIRE(ord.p_value == pse.p_value);
}

TEST_CASE("kruskal-wallis degenerate and precondition paths")
{
    auto constant = make_grouped({{2, 2}, {2, 2}});
    auto r = kruskal_wallis(constant);
    REQUIRE(r.degenerate);
    REQUIRE(r.p_value == 1.0);
    REQUIRE_THROWS_AS(kruskal_wallis(make_grouped({{1.0}, {2.0}})), std::invalid_argument);
}

TEST_CASE("hn trend: dice allocations flip the numerator sign")
{
    const std::vector<DistributionSpec> dice{
        DiscreteDist::uniform({9, 16, 17, 20, 21, 22}),
        DiscreteDist::uniform({13, 14, 15, 18, 19, 26}),
        DiscreteDist::uniform({10, 11, 12, 23, 24, 25})};
    const std::vector<double> trend{1, 2, 3};

    auto mean_numerator = [&](const std::vector<std::size_t>& sizes, Ranking ranking,
                              std::uint64_t seed) {
        const int reps = 300;
        double acc = 0.0, acc2 = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            RngStream stream(seed, static_cast<std::uint64_t>(rep));
            std::vector<std::vector<double>> groups;
            for (std::size_t i = 0; i < 3; ++i)
                groups.push_back(sample(dice[i], sizes[i], stream));
            auto rpt = hn_trend(make_grouped(std::move(groups)), trend, ranking);
            acc += *rpt.numerator;
            acc2 += *rpt.numerator * *rpt.numerator;
        }
        const double mean = acc / reps;
        const double sd = std::sqrt((acc2 - reps * mean * mean) / (reps - 1));
        return std::pair{mean, sd / std::sqrt(static_cast<double>(reps))};
    };

    // setting (B): population value 1/16 > 0
    auto [mb, seb] = mean_numerator({160, 20, 60}, Ranking::ordinary, 101);
    REQUIRE(mb > 3.0 * seb);
    // setting (C): population value -1/12 < 0
    auto [mc, sec] = mean_numerator({60, 160, 20}, Ranking::ordinary, 102);
    REQUIRE(mc < -3.0 * sec);
    // pseudo ranking: population value 0 for any allocation
    auto [mp, sep] = mean_numerator({160, 20, 60}, Ranking::pseudo, 103);
    REQUIRE(std::fabs(mp) < 4.0 * sep);
}

TEST_CASE("hn trend report plumbing")
{
    auto data = make_grouped({{1, 2, 9}, {3, 4}, {5, 6, 7}});
    auto two = hn_trend(data, {1, 2, 3}, Ranking::ordinary, TestSide::two_sided);
    auto inc = hn_trend(data, {1, 2, 3}, Ranking::ordinary, TestSide::increasing);
    auto dec = hn_trend(data, {1, 2, 3}, Ranking::ordinary, TestSide::decreasing);
    REQUIRE(two.numerator.has_value());
    REQUIRE(inc.p_value + dec.p_value == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(two.p_value ==
            Catch::Approx(2.0 * std::min(inc.p_value, dec.p_value)).margin(1e-12));
    REQUIRE_THROWS_AS(hn_trend(data, {1, 2}, Ranking::ordinary), std::invalid_argument);

    auto degenerate = hn_trend(make_grouped({{1, 1}, {1, 1}, {1, 1}}), {1, 2, 3});
    REQUIRE(degenerate.degenerate);
}

TEST_CASE("contrast test, strong-null path: hand evaluation of the cited formulas")
{
    // cells (a1,b1)=[1,2], (a1,b2)=[5,3], (a2,b1)=[4,7], (a2,b2)=[6,8]
    auto data = two_by_two({{std::vector<double>{1, 2}, {5, 3}, {4, 7}, {6, 8}}});
    const std::vector<double> c_ab{1, -1, -1, 1};

    // ranks are the values themselves: means 1.5, 4, 5.5, 7
    // S^2: 0.5, 2, 4.5, 2 on the raw rank scale
    const double n_total = 8.0;
    const double c_rbar = 1.5 - 4.0 - 5.5 + 7.0;
    const double t_n = c_rbar / std::sqrt(n_total);
    const double s0_raw = (0.5 + 2.0 + 4.5 + 2.0) / 2.0;        // sum S^2_ij / n_ij
    const double sigma0_sq = s0_raw / n_total;                  // with the 1/N^2 scaling
    const double l_n = t_n / std::sqrt(sigma0_sq);
    const double f_hat = s0_raw * s0_raw /
                         (0.25 * 0.25 + 1.0 * 1.0 + 2.25 * 2.25 + 1.0 * 1.0);

    auto r = contrast_test(data, c_ab, Ranking::ordinary, VarianceModel::strong_null);
    REQUIRE(r.statistic == Catch::Approx(l_n).margin(1e-12));
    REQUIRE(r.df == Catch::Approx(f_hat).margin(1e-12));
    REQUIRE(*r.statistic_squared == Catch::Approx(l_n * l_n).margin(1e-12));
    REQUIRE(r.p_value == Catch::Approx(2.0 * t_sf(std::fabs(l_n), f_hat)).margin(1e-12));
    REQUIRE(*r.numerator == Catch::Approx(t_n / std::sqrt(n_total)).margin(1e-12));

    const auto est = contrast_variance_components(data);
    REQUIRE(est.s2[0] == Catch::Approx(0.5 / 64.0).margin(1e-15));
    REQUIRE(est.s2[1] == Catch::Approx(2.0 / 64.0).margin(1e-15));
    REQUIRE(est.sigma0_sq == Catch::Approx(sigma0_sq).margin(1e-15));
    REQUIRE(est.f_hat == Catch::Approx(f_hat).margin(1e-12));
}

TEST_CASE("contrast test: additive constant cells zero the AB numerator")
{
    auto data = two_by_two({{std::vector<double>{1, 1}, {2, 2}, {3, 3}, {4, 4}}});
    auto r = contrast_test(data, std::vector<double>{1, -1, -1, 1});
    REQUIRE(*r.numerator == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(r.degenerate); // no within-cell variability at all
}

TEST_CASE("contrast test: balanced ordinary and pseudo reports are identical")
{
    RngStream stream(77, 3);
    std::array<std::vector<double>, 4> cells;
    for (auto& c : cells)
        for (int k = 0; k < 10; ++k) c.push_back(stream.next_normal(0, 1));
    auto data = two_by_two(std::move(cells));
    for (auto which : {FactorialContrast::main_a, FactorialContrast::main_b,
                       FactorialContrast::interaction_ab}) {
        auto ord = contrast_test(data, which, Ranking::ordinary);
        auto pse = contrast_test(data, which, Ranking::pseudo);
        REQUIRE(ord.statistic == pse.statistic);
        REQUIRE(ord.df == pse.df);
        REQUIRE(ord.p_value == pse.p_value);
    }
}

TEST_CASE("contrast test preconditions")
{
    auto one_way = make_grouped({{1, 2}, {3, 4}});
    REQUIRE_THROWS_AS(contrast_test(one_way, std::vector<double>{1, -1, -1, 1}),
                      std::invalid_argument);
    auto tiny = two_by_two({{std::vector<double>{1}, {2, 3}, {4, 5}, {6, 7}}});
    REQUIRE_THROWS_AS(contrast_test(tiny, std::vector<double>{1, -1, -1, 1}),
                      std::invalid_argument);
}

TEST_CASE("anova 2x2 hand evaluation")
{
    auto data = two_by_two({{std::vector<double>{0, 2}, {1, 3}, {2, 4}, {3, 5}}});
    // cell means 1,2,3,4; within-cell ss = 2 each; pooled var = 8/4 = 2
    auto a = anova_2x2(data, contrast_vector(FactorialContrast::main_a));
    // c'xbar = 1+2-3-4 = -4; weight = 4/2 = 2; F = 16/(2*2) = 4
    REQUIRE(a.statistic == Catch::Approx(4.0).margin(1e-12));
    REQUIRE(a.df == 1.0);
    REQUIRE(a.df2 == 4.0);
    REQUIRE(a.p_value == Catch::Approx(f_sf(4.0, 1.0, 4.0)).margin(1e-12));

    auto ab = anova_2x2(data, contrast_vector(FactorialContrast::interaction_ab));
    REQUIRE(*ab.numerator == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(ab.statistic == Catch::Approx(0.0).margin(1e-15));

    auto flat = two_by_two({{std::vector<double>{1, 1}, {2, 2}, {3, 3}, {4, 4}}});
    auto degenerate = anova_2x2(flat, contrast_vector(FactorialContrast::interaction_ab));
    REQUIRE(degenerate.degenerate);
}

TEST_CASE("balanced section-4 model: main effects reject at tiny levels")
{
    const std::vector<DistributionSpec> specs{NormalDist(10, 0.4), NormalDist(9, 0.4),
                                              NormalDist(9, 0.4), NormalDist(8, 0.4)};
    int anova_hits = 0, rank_hits = 0;
    const int reps = 60;
    for (int rep = 0; rep < reps; ++rep) {
        RngStream stream(5005, static_cast<std::uint64_t>(rep));
        std::array<std::vector<double>, 4> cells;
        for (std::size_t i = 0; i < 4; ++i) cells[i] = sample(specs[i], 25, stream);
        auto data = two_by_two(std::move(cells));
        for (auto which : {FactorialContrast::main_a, FactorialContrast::main_b}) {
            if (anova_2x2(data, which).p_value < 1e-4) ++anova_hits;
            if (contrast_test(data, which).p_value < 1e-4) ++rank_hits;
        }
    }
    REQUIRE(anova_hits >= 2 * reps - 2);
    REQUIRE(rank_hits >= 2 * reps - 2);
}

TEST_CASE("monotone invariance of the rank tests but not anova")
{
    RngStream stream(42, 0);
    std::array<std::vector<double>, 4> cells;
    for (auto& c : cells)
        for (int k = 0; k < 8; ++k) c.push_back(stream.next_normal(0, 1));
    auto data = two_by_two(cells);
    std::array<std::vector<double>, 4> warped;
    for (std::size_t i = 0; i < 4; ++i)
        for (double x : cells[i]) warped[i].push_back(std::exp(x));
    auto data_w = two_by_two(std::move(warped));

    auto kw_a = kruskal_wallis(data);
    auto kw_b = kruskal_wallis(data_w);
    REQUIRE(kw_a.statistic == kw_b.statistic);
    REQUIRE(kw_a.p_value == kw_b.p_value);

    auto hn_a = hn_trend(data, {1, 2, 3, 4});
    auto hn_b = hn_trend(data_w, {1, 2, 3, 4});
    REQUIRE(hn_a.statistic == hn_b.statistic);

    for (auto vm : {VarianceModel::influence, VarianceModel::strong_null}) {
        auto ct_a = contrast_test(data, FactorialContrast::interaction_ab, Ranking::ordinary, vm);
        auto ct_b = contrast_test(data_w, FactorialContrast::interaction_ab, Ranking::ordinary,
                                  vm);
        REQUIRE(ct_a.statistic == ct_b.statistic);
        REQUIRE(ct_a.df == ct_b.df);
    }

    auto an_a = anova_2x2(data, FactorialContrast::interaction_ab);
    auto an_b = anova_2x2(data_w, FactorialContrast::interaction_ab);
    REQUIRE(an_a.statistic != an_b.statistic);
}

TEST_CASE("permuting groups together with the trend leaves the statistic unchanged")
{
    auto data = make_grouped({{1, 5, 3}, {2, 2, 8}, {9, 4}});
    auto permuted = make_grouped({{9, 4}, {1, 5, 3}, {2, 2, 8}});
    auto a = hn_trend(data, {1, 2, 3});
    auto b = hn_trend(permuted, {3, 1, 2});
    REQUIRE(a.statistic == Catch::Approx(b.statistic).margin(1e-12));

    auto kw_a = kruskal_wallis(data);
    auto kw_b = kruskal_wallis(permuted);
    REQUIRE(kw_a.statistic == Catch::Approx(kw_b.statistic).margin(1e-12));
}

TEST_CASE("d = 2: ordinary and pseudo trend numerators coincide")
{
    RngStream stream(9, 9);
    for (int iter = 0; iter < 20; ++iter) {
        auto data = oracle::random_dataset(stream, 2, 2);
        auto ord = hn_trend(data, {0, 1}, Ranking::ordinary);
        auto pse = hn_trend(data, {0, 1}, Ranking::pseudo);
        REQUIRE(*ord.numerator == Catch::Approx(*pse.numerator).margin(1e-12));
    }
}
