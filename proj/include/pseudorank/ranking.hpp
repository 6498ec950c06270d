#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pseudorank/grouped_data.hpp"

namespace pseudorank {

/// Count function: 0, 1/2, 1 according as u < 0, u = 0, u > 0.
/// Ties are decided by exact floating-point equality.
inline double count(double u)
{
    if (u < 0.0) return 0.0;
    if (u > 0.0) return 1.0;
    return 0.5;
}

enum class Ranking { ordinary, pseudo };

/// Per-observation rank values, laid out like the GroupedData that produced
/// them: entries[i][k] is the (pseudo-)rank of observation k in group i.
struct RankAssignment {
    Ranking kind{Ranking::ordinary};
    std::vector<std::vector<double>> entries;

    std::vector<double> group_means() const
    {
        std::vector<double> m;
        m.reserve(entries.size());
        for (const auto& g : entries)
            m.push_back(std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size()));
        return m;
    }

    std::vector<double> flatten() const
    {
        std::vector<double> out;
        for (const auto& g : entries) out.insert(out.end(), g.begin(), g.end());
        return out;
    }
};

/// Mid-ranks over the pooled sample: R_ik = 1/2 + sum over all observations
/// of count(X_ik - X). Sort-based with tie-block averaging, O(N log N).
inline RankAssignment ranks(const GroupedData& data)
{
    const std::size_t n_total = data.total_count();
    struct Tagged {
        double value;
        std::size_t group, index;
    };
    std::vector<Tagged> pool;
    pool.reserve(n_total);
    for (std::size_t i = 0; i < data.group_count(); ++i)
        for (std::size_t k = 0; k < data.group(i).values.size(); ++k)
            pool.push_back({data.group(i).values[k], i, k});
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Tagged& a, const Tagged& b) { return a.value < b.value; });

    RankAssignment out;
    out.kind = Ranking::ordinary;
    out.entries.resize(data.group_count());
    for (std::size_t i = 0; i < data.group_count(); ++i)
        out.entries[i].resize(data.group(i).values.size());

    std::size_t pos = 0;
    while (pos < n_total) {
        std::size_t end = pos + 1;
        while (end < n_total && pool[end].value == pool[pos].value) ++end;
        // tie block occupying positions pos+1 .. end gets the mid-rank
        const double mid = 0.5 * static_cast<double>(pos + 1 + end);
        for (std::size_t j = pos; j < end; ++j)
            out.entries[pool[j].group][pool[j].index] = mid;
        pos = end;
    }
    return out;
}

namespace detail {

/// below + 0.5 * tied count of x within a sorted array.
inline double half_count(const std::vector<double>& sorted, double x)
{
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x);
    const auto hi = std::upper_bound(lo, sorted.end(), x);
    const auto below = static_cast<double>(lo - sorted.begin());
    const auto tied = static_cast<double>(hi - lo);
    return below + 0.5 * tied;
}

} // namespace detail

/// Pseudo-ranks: R^psi_ik = 1/2 + (N/d) sum_r (1/n_r) sum_l count(X_ik - X_rl),
/// evaluated against per-group sorted arrays (O(N log N) for fixed d).
/// Coincides with ranks() whenever all group sizes are equal.
inline RankAssignment pseudo_ranks(const GroupedData& data)
{
    const auto d = static_cast<double>(data.group_count());
    const auto n_total = static_cast<double>(data.total_count());

    std::vector<std::vector<double>> sorted(data.group_count());
    for (std::size_t r = 0; r < data.group_count(); ++r) {
        sorted[r] = data.group(r).values;
        std::sort(sorted[r].begin(), sorted[r].end());
    }

    RankAssignment out;
    out.kind = Ranking::pseudo;
    out.entries.resize(data.group_count());
    for (std::size_t i = 0; i < data.group_count(); ++i) {
        const auto& values = data.group(i).values;
        out.entries[i].resize(values.size());
        for (std::size_t k = 0; k < values.size(); ++k) {
            double acc = 0.0;
            for (std::size_t r = 0; r < data.group_count(); ++r)
                acc += detail::half_count(sorted[r], values[k]) /
                       static_cast<double>(sorted[r].size());
            out.entries[i][k] = 0.5 + n_total / d * acc;
        }
    }
    return out;
}

inline RankAssignment rank_by(const GroupedData& data, Ranking kind)
{
    return kind == Ranking::ordinary ? ranks(data) : pseudo_ranks(data);
}

} // namespace pseudorank
