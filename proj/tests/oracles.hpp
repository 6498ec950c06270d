#pragma once

// Definition-level oracles, deliberately independent of the library's
// computation paths: ranks/pseudo-ranks by the O(N^2) count-function double
// loop, effects by empirical-cdf evaluation, and exact dice enumeration.

#include <cstdint>
#include <vector>

#include "pseudorank/grouped_data.hpp"
#include "pseudorank/ranking.hpp"
#include "pseudorank/rational.hpp"
#include "pseudorank/rng.hpp"

namespace oracle {

using pseudorank::count;
using pseudorank::GroupedData;
using pseudorank::Rational;

inline std::vector<std::vector<double>> rank_oracle(const GroupedData& data)
{
    std::vector<std::vector<double>> out(data.group_count());
    for (std::size_t i = 0; i < data.group_count(); ++i) {
        for (double x : data.group(i).values) {
            double acc = 0.5;
            for (std::size_t r = 0; r < data.group_count(); ++r)
                for (double y : data.group(r).values) acc += count(x - y);
            out[i].push_back(acc);
        }
    }
    return out;
}

inline std::vector<std::vector<double>> pseudo_rank_oracle(const GroupedData& data)
{
    const auto d = static_cast<double>(data.group_count());
    const auto n_total = static_cast<double>(data.total_count());
    std::vector<std::vector<double>> out(data.group_count());
    for (std::size_t i = 0; i < data.group_count(); ++i) {
        for (double x : data.group(i).values) {
            double acc = 0.0;
            for (std::size_t r = 0; r < data.group_count(); ++r) {
                double inner = 0.0;
                for (double y : data.group(r).values) inner += count(x - y);
                acc += inner / static_cast<double>(data.group(r).values.size());
            }
            out[i].push_back(0.5 + n_total / d * acc);
        }
    }
    return out;
}

/// Normalized empirical cdf of group r at x.
inline double ecdf(const GroupedData& data, std::size_t r, double x)
{
    double acc = 0.0;
    for (double y : data.group(r).values) acc += count(x - y);
    return acc / static_cast<double>(data.group(r).values.size());
}

/// p_i = integral of Hhat d Fhat_i, evaluated pointwise.
inline std::vector<double> p_oracle(const GroupedData& data)
{
    const auto n_total = static_cast<double>(data.total_count());
    std::vector<double> out;
    for (std::size_t i = 0; i < data.group_count(); ++i) {
        double acc = 0.0;
        for (double x : data.group(i).values) {
            double h = 0.0;
            for (std::size_t r = 0; r < data.group_count(); ++r)
                h += static_cast<double>(data.group(r).values.size()) / n_total *
                     ecdf(data, r, x);
            acc += h;
        }
        out.push_back(acc / static_cast<double>(data.group(i).values.size()));
    }
    return out;
}

/// psi_i = integral of Ghat d Fhat_i.
inline std::vector<double> psi_oracle(const GroupedData& data)
{
    const auto d = static_cast<double>(data.group_count());
    std::vector<double> out;
    for (std::size_t i = 0; i < data.group_count(); ++i) {
        double acc = 0.0;
        for (double x : data.group(i).values) {
            double g = 0.0;
            for (std::size_t r = 0; r < data.group_count(); ++r) g += ecdf(data, r, x);
            acc += g / d;
        }
        out.push_back(acc / static_cast<double>(data.group(i).values.size()));
    }
    return out;
}

/// w_ri = integral of Fhat_r d Fhat_i (distinct route from the pair loop).
inline std::vector<std::vector<double>> w_oracle(const GroupedData& data)
{
    const std::size_t d = data.group_count();
    std::vector<std::vector<double>> w(d, std::vector<double>(d, 0.0));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (double x : data.group(i).values) acc += ecdf(data, r, x);
            w[r][i] = acc / static_cast<double>(data.group(i).values.size());
        }
    return w;
}

/// Exact w for two fair six-sided dice by enumeration of all 36 face pairs.
inline Rational dice_w_enumeration(const std::vector<double>& faces_r,
                                   const std::vector<double>& faces_i)
{
    std::int64_t twice_wins = 0; // wins counted twice, ties once
    for (double a : faces_r)
        for (double b : faces_i) {
            if (a < b) twice_wins += 2;
            else if (a == b) twice_wins += 1;
        }
    return {twice_wins, 72};
}

/// Random grouped dataset with injected ties: values are drawn from a small
/// integer lattice with probability `tie_share`, otherwise continuous.
inline GroupedData random_dataset(pseudorank::RngStream& stream, std::size_t d_min = 2,
                                  std::size_t d_max = 6, std::size_t n_max = 40,
                                  double tie_share = 0.5)
{
    const std::size_t d = d_min + stream.next_u64() % (d_max - d_min + 1);
    std::vector<std::vector<double>> groups(d);
    for (auto& g : groups) {
        const std::size_t n = 1 + stream.next_u64() % n_max;
        for (std::size_t k = 0; k < n; ++k) {
            if (stream.next_unit() < tie_share)
                g.push_back(static_cast<double>(stream.next_u64() % 8));
            else
                g.push_back(stream.next_normal(2.0, 3.0));
        }
    }
    return pseudorank::make_grouped(std::move(groups));
}

} // namespace oracle
