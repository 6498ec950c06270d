#pragma once

#include <cstddef>
#include <vector>

#include "pseudorank/grouped_data.hpp"
#include "pseudorank/ranking.hpp"

namespace pseudorank {

enum class EffectKind { weighted_p, unweighted_psi };

/// Relative-effect estimates for the d groups. weighted_p satisfies
/// sum (n_i/N) p_i = 1/2; unweighted_psi satisfies (1/d) sum psi_i = 1/2.
struct EffectVector {
    EffectKind kind{EffectKind::weighted_p};
    std::vector<double> values;
    std::vector<std::size_t> group_sizes;
    std::size_t total_count{0};
};

/// w[r][i] estimates w_ri = P(X_r < X_i) + P(X_r = X_i)/2; w[i][i] = 1/2 and
/// w[i][r] = 1 - w[r][i] hold exactly.
struct PairwiseEffectMatrix {
    std::vector<std::vector<double>> w;
};

/// Weighted relative effects from mid-ranks: p_i = (Rbar_i - 1/2) / N.
inline EffectVector estimate_p(const GroupedData& data)
{
    const auto assignment = ranks(data);
    const auto n_total = static_cast<double>(data.total_count());
    EffectVector out;
    out.kind = EffectKind::weighted_p;
    out.group_sizes = data.sizes();
    out.total_count = data.total_count();
    for (double mean : assignment.group_means())
        out.values.push_back((mean - 0.5) / n_total);
    return out;
}

/// Unweighted relative effects from pseudo-ranks: psi_i = (Rbar^psi_i - 1/2) / N.
inline EffectVector estimate_psi(const GroupedData& data)
{
    const auto assignment = pseudo_ranks(data);
    const auto n_total = static_cast<double>(data.total_count());
    EffectVector out;
    out.kind = EffectKind::unweighted_psi;
    out.group_sizes = data.sizes();
    out.total_count = data.total_count();
    for (double mean : assignment.group_means())
        out.values.push_back((mean - 0.5) / n_total);
    return out;
}

inline EffectVector estimate_effects(const GroupedData& data, Ranking kind)
{
    return kind == Ranking::ordinary ? estimate_p(data) : estimate_psi(data);
}

/// Pairwise-effect matrix by the count-function double loop
/// (d is small in every intended use; the pair loop is the contract).
inline PairwiseEffectMatrix estimate_pairwise(const GroupedData& data)
{
    const std::size_t d = data.group_count();
    PairwiseEffectMatrix out;
    out.w.assign(d, std::vector<double>(d, 0.5));
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t i = r + 1; i < d; ++i) {
            const auto& xr = data.group(r).values;
            const auto& xi = data.group(i).values;
            double acc = 0.0;
            for (double vi : xi)
                for (double vr : xr) acc += count(vi - vr);
            const double w_ri = acc / (static_cast<double>(xr.size()) *
                                       static_cast<double>(xi.size()));
            out.w[r][i] = w_ri;
            out.w[i][r] = 1.0 - w_ri;
        }
    }
    return out;
}

} // namespace pseudorank
