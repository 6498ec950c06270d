#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pseudorank/effects.hpp"
#include "pseudorank/grouped_data.hpp"
#include "pseudorank/influence.hpp"
#include "pseudorank/ranking.hpp"
#include "pseudorank/special_functions.hpp"

namespace pseudorank {

enum class IntervalKind { psi_ci, p_interval };

/// Caveat attached to every p-interval report (the weighted effects move
/// with the sample-size allocation, so the intervals are descriptive).
inline const char* p_interval_caveat()
{
    return "intervals for the weighted effects p_i cannot strictly be interpreted "
           "as confidence intervals unless the design is balanced";
}

struct IntervalRow {
    std::string label;
    double lower{0.0};
    double estimate{0.0};
    double upper{0.0};
};

struct IntervalReport {
    IntervalKind kind{IntervalKind::psi_ci};
    double level{0.95};
    std::vector<IntervalRow> rows;
    std::string note; // set for p_interval
};

/// Empirical influence decomposition for one target effect: the unit-vector
/// case of the general contrast machinery. Within each group the centered
/// influences sum to zero; Var(effect_i) = sum_r n_r * s2_r.
struct InfluenceComponents {
    std::vector<std::vector<double>> centered; // per group, per observation
    std::vector<double> group_variance;        // s2_r(u), ddof 1
    double variance{0.0};                      // sum_r n_r s2_r(u)
};

inline InfluenceComponents influence_components(const GroupedData& data, std::size_t target,
                                                EffectKind kind)
{
    if (target >= data.group_count())
        throw std::invalid_argument("influence_components: target out of range");
    const bool unweighted = kind == EffectKind::unweighted_psi;
    const auto assignment = unweighted ? pseudo_ranks(data) : ranks(data);
    std::vector<double> unit(data.group_count(), 0.0);
    unit[target] = 1.0;
    auto infl = detail::contrast_influence_variance(data, assignment, unit);
    InfluenceComponents out;
    out.centered = std::move(infl.centered);
    out.group_variance.resize(data.group_count());
    for (std::size_t r = 0; r < data.group_count(); ++r)
        out.group_variance[r] =
            infl.group_components[r] / static_cast<double>(data.group(r).values.size());
    out.variance = infl.variance;
    return out;
}

namespace detail {

inline IntervalReport interval_report(const GroupedData& data, double level, bool unweighted,
                                      bool logit_scale)
{
    if (!(level > 0.5 && level < 1.0))
        throw std::invalid_argument("confidence level must lie in (0.5, 1)");
    for (const auto& g : data.groups())
        if (g.values.size() < 2)
            throw std::invalid_argument("interval estimation needs n_i >= 2 in every group "
                                        "(group '" + g.label + "')");

    const auto assignment = unweighted ? pseudo_ranks(data) : ranks(data);
    const auto n_total = static_cast<double>(data.total_count());
    const double z = normal_quantile(0.5 * (1.0 + level));

    IntervalReport report;
    report.kind = unweighted ? IntervalKind::psi_ci : IntervalKind::p_interval;
    report.level = level;
    if (!unweighted) report.note = p_interval_caveat();

    const auto means = assignment.group_means();
    std::vector<double> unit(data.group_count(), 0.0);
    for (std::size_t i = 0; i < data.group_count(); ++i) {
        const double estimate = (means[i] - 0.5) / n_total;
        unit[i] = 1.0;
        const auto infl = contrast_influence_variance(data, assignment, unit);
        unit[i] = 0.0;
        const double sd = std::sqrt(infl.variance);

        IntervalRow row;
        row.label = data.group(i).label;
        row.estimate = estimate;
        if (logit_scale && sd > 0.0 && estimate > 0.0 && estimate < 1.0) {
            // delta method on logit(estimate)
            const double lg = std::log(estimate / (1.0 - estimate));
            const double sd_lg = sd / (estimate * (1.0 - estimate));
            row.lower = 1.0 / (1.0 + std::exp(-(lg - z * sd_lg)));
            row.upper = 1.0 / (1.0 + std::exp(-(lg + z * sd_lg)));
        } else {
            row.lower = std::max(0.0, estimate - z * sd);
            row.upper = std::min(1.0, estimate + z * sd);
        }
        report.rows.push_back(row);
    }
    return report;
}

} // namespace detail

/// Two-sided Wald confidence intervals for the unweighted effects psi_i with
/// the influence-function variance estimator, limits clipped to [0,1];
/// logit_scale switches to delta-method limits on the logit scale.
inline IntervalReport ci_psi(const GroupedData& data, double level = 0.95,
                             bool logit_scale = false)
{
    return detail::interval_report(data, level, true, logit_scale);
}

/// Descriptive intervals for the weighted effects p_i (same construction
/// with the weighted mean cdf and ordinary ranks); the report carries the
/// balanced-design caveat.
inline IntervalReport interval_p(const GroupedData& data, double level = 0.95,
                                 bool logit_scale = false)
{
    return detail::interval_report(data, level, false, logit_scale);
}

} // namespace pseudorank
