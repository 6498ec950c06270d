#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "pseudorank/analytic.hpp"
#include "pseudorank/confidence.hpp"
#include "pseudorank/distributions.hpp"
#include "pseudorank/grouped_data.hpp"
#include "pseudorank/hypothesis_tests.hpp"
#include "pseudorank/rng.hpp"

namespace pseudorank {

/// Draw n variates. Discrete specs sample by inverse cdf over the pmf;
/// normal specs by the deterministic inverse-cdf transform of stream
/// uniforms (one uniform per draw either way).
inline std::vector<double> sample(const DistributionSpec& spec, std::size_t n, RngStream& stream)
{
    if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
    std::vector<double> out;
    out.reserve(n);
    if (is_discrete(spec)) {
        const auto& d = std::get<DiscreteDist>(spec);
        std::vector<double> cum;
        cum.reserve(d.probs.size());
        double acc = 0.0;
        for (const auto& p : d.probs) {
            acc += p.to_double();
            cum.push_back(acc);
        }
        cum.back() = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double u = stream.next_unit();
            std::size_t idx = 0;
            while (idx + 1 < cum.size() && cum[idx] < u) ++idx;
            out.push_back(d.support[idx]);
        }
    } else {
        const auto& g = std::get<NormalDist>(spec);
        for (std::size_t k = 0; k < n; ++k) out.push_back(stream.next_normal(g.mu, g.sigma));
    }
    return out;
}

enum class Metric { rejection_rate, sign_frequency, coverage };

/// Which test a simulation runs on each replication. For contrast/anova the
/// specs are interpreted in cell order (a1,b1), (a1,b2), (a2,b1), (a2,b2).
struct TestSpecification {
    TestMethod method{TestMethod::kruskal_wallis};
    Ranking ranking{Ranking::ordinary};
    std::optional<std::vector<double>> trend;
    std::optional<std::vector<double>> contrast;
    std::optional<FactorialContrast> named_contrast;
    TestSide side{TestSide::two_sided};
    VarianceModel variance{VarianceModel::influence};
};

struct SimulationPlan {
    std::vector<DistributionSpec> specs;
    std::vector<std::int64_t> alloc; // absolute group sizes
    TestSpecification test;          // unused for metric == coverage
    double alpha{0.05};
    std::int64_t reps{1};
    std::uint64_t seed{0};
    Metric metric{Metric::rejection_rate};
    double level{0.95}; // coverage only

    void validate() const
    {
        if (specs.size() < 2) throw std::invalid_argument("plan: need at least 2 specs");
        if (alloc.size() != specs.size())
            throw std::invalid_argument("plan: alloc length != number of specs");
        for (auto n : alloc)
            if (n < 1) throw std::invalid_argument("plan: group sizes must be >= 1");
        if (reps < 1) throw std::invalid_argument("plan: reps must be >= 1");
        if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("plan: alpha not in (0,1)");
        if (metric == Metric::coverage && !(level > 0.5 && level < 1.0))
            throw std::invalid_argument("plan: coverage level not in (0.5,1)");
        const bool factorial = metric != Metric::coverage &&
                               (test.method == TestMethod::contrast ||
                                test.method == TestMethod::anova);
        if (factorial && specs.size() != 4)
            throw std::invalid_argument("plan: 2x2 methods need exactly 4 specs");
        if (factorial && !test.contrast && !test.named_contrast)
            throw std::invalid_argument("plan: contrast/anova need a contrast");
        if (metric != Metric::coverage && test.method == TestMethod::hn_trend && !test.trend)
            throw std::invalid_argument("plan: hn_trend needs a trend vector");
    }
};

struct SimulationResult {
    Metric metric{Metric::rejection_rate};
    std::int64_t reps{0};
    std::uint64_t seed{0};
    std::int64_t degenerate_count{0};

    std::optional<double> rejection_rate;
    std::optional<double> rejection_rate_se;

    std::optional<double> positive_rate;
    std::optional<double> negative_rate;
    std::optional<double> mean_numerator;
    std::optional<double> sd_numerator;
    std::optional<double> mean_numerator_se;

    std::optional<std::vector<double>> coverage;    // per group
    std::optional<std::vector<double>> coverage_se; // per group
    std::optional<std::vector<double>> truth;       // analytic psi per group
};

namespace detail {

struct RepRecord {
    bool reject{false};
    bool degenerate{false};
    double numerator{0.0};
    std::vector<bool> covered;
};

inline GroupedData build_data(const SimulationPlan& plan, RngStream& stream, bool factorial)
{
    if (factorial) {
        std::array<std::vector<double>, 4> cells;
        for (std::size_t i = 0; i < 4; ++i)
            cells[i] = sample(plan.specs[i], static_cast<std::size_t>(plan.alloc[i]), stream);
        return make_two_by_two(std::move(cells));
    }
    std::vector<std::vector<double>> groups;
    groups.reserve(plan.specs.size());
    for (std::size_t i = 0; i < plan.specs.size(); ++i)
        groups.push_back(sample(plan.specs[i], static_cast<std::size_t>(plan.alloc[i]), stream));
    return make_grouped(std::move(groups));
}

inline RepRecord run_one(const SimulationPlan& plan, std::int64_t rep,
                         const std::vector<double>& truth)
{
    RngStream stream(plan.seed, static_cast<std::uint64_t>(rep));
    RepRecord rec;

    if (plan.metric == Metric::coverage) {
        const auto data = build_data(plan, stream, false);
        const auto report = ci_psi(data, plan.level);
        rec.covered.reserve(truth.size());
        for (std::size_t i = 0; i < truth.size(); ++i)
            rec.covered.push_back(report.rows[i].lower <= truth[i] &&
                                  truth[i] <= report.rows[i].upper);
        return rec;
    }

    const bool factorial =
        plan.test.method == TestMethod::contrast || plan.test.method == TestMethod::anova;
    const auto data = build_data(plan, stream, factorial);

    TestReport report;
    switch (plan.test.method) {
        case TestMethod::kruskal_wallis:
            report = kruskal_wallis(data, plan.test.ranking);
            break;
        case TestMethod::hn_trend:
            report = hn_trend(data, *plan.test.trend, plan.test.ranking, plan.test.side);
            break;
        case TestMethod::contrast:
            report = plan.test.named_contrast
                         ? contrast_test(data, *plan.test.named_contrast, plan.test.ranking,
                                         plan.test.variance)
                         : contrast_test(data, *plan.test.contrast, plan.test.ranking,
                                         plan.test.variance);
            break;
        case TestMethod::anova:
            report = plan.test.named_contrast ? anova_2x2(data, *plan.test.named_contrast)
                                              : anova_2x2(data, *plan.test.contrast);
            break;
    }
    rec.reject = !report.degenerate && report.p_value <= plan.alpha;
    rec.degenerate = report.degenerate;
    rec.numerator = report.numerator.value_or(report.statistic);
    return rec;
}

} // namespace detail

/// Run a plan. Replications are independent substreams keyed by
/// (seed, replication index); records are merged in replication order, so
/// the result is bitwise identical for any thread count.
inline SimulationResult run(const SimulationPlan& plan, unsigned threads = 0)
{
    plan.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    std::vector<double> truth;
    if (plan.metric == Metric::coverage) {
        Allocation alloc = Allocation::from_counts(plan.alloc);
        truth = exact_effects(plan.specs, alloc).second; // psi, allocation-free
    }

    const auto reps = static_cast<std::size_t>(plan.reps);
    std::vector<detail::RepRecord> records(reps);
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(reps));
    if (workers <= 1) {
        for (std::size_t r = 0; r < reps; ++r)
            records[r] = detail::run_one(plan, static_cast<std::int64_t>(r), truth);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t r = w; r < reps; r += workers)
                    records[r] = detail::run_one(plan, static_cast<std::int64_t>(r), truth);
            });
        }
        for (auto& t : pool) t.join();
    }

    SimulationResult result;
    result.metric = plan.metric;
    result.reps = plan.reps;
    result.seed = plan.seed;
    for (const auto& rec : records) result.degenerate_count += rec.degenerate ? 1 : 0;

    const auto n = static_cast<double>(reps);
    if (plan.metric == Metric::rejection_rate) {
        double rejections = 0.0;
        for (const auto& rec : records) rejections += rec.reject ? 1.0 : 0.0;
        const double rate = rejections / n;
        result.rejection_rate = rate;
        result.rejection_rate_se = std::sqrt(rate * (1.0 - rate) / n);
    } else if (plan.metric == Metric::sign_frequency) {
        double pos = 0.0, neg = 0.0, sum = 0.0;
        for (const auto& rec : records) {
            if (rec.numerator > 0.0) pos += 1.0;
            if (rec.numerator < 0.0) neg += 1.0;
            sum += rec.numerator;
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& rec : records) ss += (rec.numerator - mean) * (rec.numerator - mean);
        const double sd = reps > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        result.positive_rate = pos / n;
        result.negative_rate = neg / n;
        result.mean_numerator = mean;
        result.sd_numerator = sd;
        result.mean_numerator_se = sd / std::sqrt(n);
    } else {
        std::vector<double> cover(truth.size(), 0.0);
        for (const auto& rec : records)
            for (std::size_t i = 0; i < cover.size(); ++i)
                cover[i] += rec.covered[i] ? 1.0 : 0.0;
        std::vector<double> se(truth.size(), 0.0);
        for (std::size_t i = 0; i < cover.size(); ++i) {
            cover[i] /= n;
            se[i] = std::sqrt(cover[i] * (1.0 - cover[i]) / n);
        }
        result.coverage = std::move(cover);
        result.coverage_se = std::move(se);
        result.truth = truth;
    }
    return result;
}

} // namespace pseudorank
