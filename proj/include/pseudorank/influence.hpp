#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pseudorank/grouped_data.hpp"
#include "pseudorank/ranking.hpp"

namespace pseudorank {
namespace detail {

/// Variance of a linear functional c'(effect vector) estimated from the
/// empirical influence decomposition of the asymptotic linearization.
///
/// For theta = sum_i c_i * effect_i (effect = p with ordinary ranks, psi with
/// pseudo-ranks), observation X_rl carries
///   u_rl = c_r/n_r * T(X_rl) + sum_i c_i * omega_r/n_r * (1 - Fhat_i(X_rl)),
/// where T(X) = (R(X) - 1/2)/N is the rank transform of the chosen ranking
/// and omega_r = n_r/N (weighted) or 1/d (unweighted). Influences are
/// centered within each group; Var(theta_hat) = sum_r n_r s2_r(u).
struct InfluenceVariance {
    std::vector<std::vector<double>> centered; // per group, per observation
    std::vector<double> group_components;      // n_r * s2_r(u)
    double variance{0.0};
    double satterthwaite_df{0.0};
};

inline InfluenceVariance contrast_influence_variance(const GroupedData& data,
                                                     const RankAssignment& assignment,
                                                     const std::vector<double>& contrast)
{
    const std::size_t d = data.group_count();
    const auto n_total = static_cast<double>(data.total_count());
    const bool unweighted = assignment.kind == Ranking::pseudo;

    std::vector<std::vector<double>> sorted(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (contrast[i] == 0.0) continue; // cdf never queried
        sorted[i] = data.group(i).values;
        std::sort(sorted[i].begin(), sorted[i].end());
    }

    InfluenceVariance out;
    out.centered.resize(d);
    out.group_components.assign(d, 0.0);
    double df_denominator = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        const auto& values = data.group(r).values;
        const auto n_r = static_cast<double>(values.size());
        const double omega = unweighted ? 1.0 / static_cast<double>(d) : n_r / n_total;
        auto& u = out.centered[r];
        u.resize(values.size());
        double mean = 0.0;
        for (std::size_t l = 0; l < values.size(); ++l) {
            double v = contrast[r] / n_r * (assignment.entries[r][l] - 0.5) / n_total;
            for (std::size_t i = 0; i < d; ++i) {
                if (contrast[i] == 0.0) continue;
                const double f_i =
                    half_count(sorted[i], values[l]) / static_cast<double>(sorted[i].size());
                v += contrast[i] * omega / n_r * (1.0 - f_i);
            }
            u[l] = v;
            mean += v;
        }
        mean /= n_r;
        double ss = 0.0;
        for (auto& v : u) {
            v -= mean;
            ss += v * v;
        }
        if (values.size() > 1) {
            out.group_components[r] = n_r * ss / (n_r - 1.0);
            out.variance += out.group_components[r];
            df_denominator +=
                out.group_components[r] * out.group_components[r] / (n_r - 1.0);
        }
    }
    out.satterthwaite_df =
        df_denominator > 0.0 ? out.variance * out.variance / df_denominator : 0.0;
    return out;
}

} // namespace detail
} // namespace pseudorank
