#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "pseudorank/distributions.hpp"
#include "pseudorank/rational.hpp"
#include "pseudorank/special_functions.hpp"

namespace pseudorank {

// Population-level oracle: exact pairwise effects w_ri, effect vectors p and
// psi, and the non-centralities of the rank / pseudo-rank statistics, for
// distributions given in closed form. Discrete-vs-discrete quantities are
// carried in exact rational arithmetic; anything involving a normal
// distribution is evaluated in floating point via the normal cdf.

/// w_ri = P(X_r < X_i) + P(X_r = X_i)/2 for two finite discrete distributions,
/// as an exact rational (double sum over support pairs).
inline Rational exact_w(const DiscreteDist& f_r, const DiscreteDist& f_i)
{
    Rational acc{0};
    const Rational half{1, 2};
    for (std::size_t b = 0; b < f_i.support.size(); ++b) {
        for (std::size_t a = 0; a < f_r.support.size(); ++a) {
            if (f_r.support[a] < f_i.support[b])
                acc += f_r.probs[a] * f_i.probs[b];
            else if (f_r.support[a] == f_i.support[b])
                acc += f_r.probs[a] * f_i.probs[b] * half;
        }
    }
    return acc;
}

/// w_ri for any pair of specs. normal x normal has the closed form
/// Phi((mu_i - mu_r) / sqrt(sigma_r^2 + sigma_i^2)); a discrete side
/// contributes a finite sum of normal cdf terms (tie probability 0).
inline double exact_w(const DistributionSpec& f_r, const DistributionSpec& f_i)
{
    if (is_discrete(f_r) && is_discrete(f_i))
        return exact_w(std::get<DiscreteDist>(f_r), std::get<DiscreteDist>(f_i)).to_double();
    if (!is_discrete(f_r) && !is_discrete(f_i)) {
        const auto& r = std::get<NormalDist>(f_r);
        const auto& i = std::get<NormalDist>(f_i);
        return normal_cdf((i.mu - r.mu) / std::sqrt(r.sigma * r.sigma + i.sigma * i.sigma));
    }
    if (is_discrete(f_r)) {
        // P(X_r < X_i) = sum_x p_r(x) * P(X_i > x)
        const auto& r = std::get<DiscreteDist>(f_r);
        const auto& i = std::get<NormalDist>(f_i);
        double acc = 0.0;
        for (std::size_t a = 0; a < r.support.size(); ++a)
            acc += r.probs[a].to_double() * (1.0 - normal_cdf((r.support[a] - i.mu) / i.sigma));
        return acc;
    }
    const auto& r = std::get<NormalDist>(f_r);
    const auto& i = std::get<DiscreteDist>(f_i);
    double acc = 0.0;
    for (std::size_t b = 0; b < i.support.size(); ++b)
        acc += i.probs[b].to_double() * normal_cdf((i.support[b] - r.mu) / r.sigma);
    return acc;
}

/// Exact rational W matrix for all-discrete specs; w[r][i] = w_ri.
inline std::vector<std::vector<Rational>> pairwise_matrix_q(const std::vector<DiscreteDist>& specs)
{
    const std::size_t d = specs.size();
    std::vector<std::vector<Rational>> w(d, std::vector<Rational>(d, Rational{1, 2}));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = r + 1; i < d; ++i) {
            w[r][i] = exact_w(specs[r], specs[i]);
            w[i][r] = Rational{1} - w[r][i];
        }
    return w;
}

inline std::vector<std::vector<double>> pairwise_matrix(const std::vector<DistributionSpec>& specs)
{
    const std::size_t d = specs.size();
    std::vector<std::vector<double>> w(d, std::vector<double>(d, 0.5));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = r + 1; i < d; ++i) {
            w[r][i] = exact_w(specs[r], specs[i]);
            w[i][r] = 1.0 - w[r][i];
        }
    return w;
}

/// Exact effect vectors for all-discrete specs: p = W'(n/N), psi = W'(1/d)1.
struct RationalEffects {
    std::vector<Rational> p;
    std::vector<Rational> psi;
};

inline RationalEffects exact_effects_q(const std::vector<DiscreteDist>& specs,
                                       const Allocation& alloc)
{
    if (specs.size() < 2) throw std::invalid_argument("exact_effects: need d >= 2 specs");
    if (alloc.size() != specs.size())
        throw std::invalid_argument("exact_effects: allocation length != number of specs");
    const std::size_t d = specs.size();
    const auto w = pairwise_matrix_q(specs);
    const auto frac = alloc.fractions();
    const Rational inv_d{1, static_cast<std::int64_t>(d)};
    RationalEffects out;
    out.p.assign(d, Rational{0});
    out.psi.assign(d, Rational{0});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t r = 0; r < d; ++r) {
            out.p[i] += w[r][i] * frac[r];
            out.psi[i] += w[r][i] * inv_d;
        }
    return out;
}

inline std::pair<std::vector<double>, std::vector<double>> exact_effects(
    const std::vector<DistributionSpec>& specs, const Allocation& alloc)
{
    if (specs.size() < 2) throw std::invalid_argument("exact_effects: need d >= 2 specs");
    if (alloc.size() != specs.size())
        throw std::invalid_argument("exact_effects: allocation length != number of specs");
    const std::size_t d = specs.size();
    const auto w = pairwise_matrix(specs);
    const auto frac = alloc.fractions();
    std::vector<double> p(d, 0.0), psi(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t r = 0; r < d; ++r) {
            p[i] += w[r][i] * frac[r].to_double();
            psi[i] += w[r][i] / static_cast<double>(d);
        }
    return {std::move(p), std::move(psi)};
}

namespace detail {

template <typename T>
T vec_mean(const std::vector<T>& v, T zero, T inv_n)
{
    T acc = zero;
    for (const auto& x : v) acc += x;
    return acc * inv_n;
}

} // namespace detail

/// p' T_d p = sum (p_i - pbar)^2 (centering matrix T_d = I - J/d).
inline double quadratic_noncentrality(const std::vector<double>& p)
{
    const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
    double acc = 0.0;
    for (double x : p) acc += (x - mean) * (x - mean);
    return acc;
}

inline Rational quadratic_noncentrality(const std::vector<Rational>& p)
{
    const Rational mean =
        detail::vec_mean(p, Rational{0}, Rational{1, static_cast<std::int64_t>(p.size())});
    Rational acc{0};
    for (const auto& x : p) acc += (x - mean) * (x - mean);
    return acc;
}

/// c' T_d p = sum c_i (p_i - pbar).
inline double linear_noncentrality(const std::vector<double>& trend, const std::vector<double>& p)
{
    if (trend.size() != p.size())
        throw std::invalid_argument("linear_noncentrality: dimension mismatch");
    const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += trend[i] * (p[i] - mean);
    return acc;
}

inline Rational linear_noncentrality(const std::vector<Rational>& trend,
                                     const std::vector<Rational>& p)
{
    if (trend.size() != p.size())
        throw std::invalid_argument("linear_noncentrality: dimension mismatch");
    const Rational mean =
        detail::vec_mean(p, Rational{0}, Rational{1, static_cast<std::int64_t>(p.size())});
    Rational acc{0};
    for (std::size_t i = 0; i < p.size(); ++i) acc += trend[i] * (p[i] - mean);
    return acc;
}

/// Exact rational layer of a non-centrality computation; available when all
/// specs are discrete and the trend vector snaps to small rationals.
struct ExactNonCentralities {
    std::vector<Rational> p;
    std::vector<Rational> psi;
    Rational c_p{0};
    Rational c_psi{0};
    std::optional<Rational> c_hn;
    std::optional<Rational> c_hn_psi;
};

struct NonCentralityReport {
    std::vector<double> p;
    std::vector<double> psi;
    double c_p{0.0};   // p' T_d p
    double c_psi{0.0}; // psi' T_d psi
    std::optional<double> c_hn;             // c' T_d p
    std::optional<double> c_hn_psi;         // c' T_d psi
    std::optional<double> c_contrast_p;     // c' p
    std::optional<double> c_contrast_psi;   // c' psi
    std::optional<double> sqrt_n_scaled;    // sqrt(N) * leading scalar non-centrality
    std::optional<ExactNonCentralities> exact;
};

/// Full non-centrality calculus for a scenario. The sqrt(N)-scaled value
/// refers to the contrast non-centrality when a contrast is given, else the
/// trend non-centrality, else c_p.
inline NonCentralityReport noncentralities(const std::vector<DistributionSpec>& specs,
                                           const Allocation& alloc,
                                           const std::optional<std::vector<double>>& trend = {},
                                           const std::optional<std::vector<double>>& contrast = {},
                                           std::optional<std::int64_t> n_total = {})
{
    const std::size_t d = specs.size();
    if (trend && trend->size() != d)
        throw std::invalid_argument("noncentralities: trend length != number of specs");
    if (contrast && contrast->size() != d)
        throw std::invalid_argument("noncentralities: contrast length != number of specs");

    NonCentralityReport report;
    std::tie(report.p, report.psi) = exact_effects(specs, alloc);
    report.c_p = quadratic_noncentrality(report.p);
    report.c_psi = quadratic_noncentrality(report.psi);
    if (trend) {
        report.c_hn = linear_noncentrality(*trend, report.p);
        report.c_hn_psi = linear_noncentrality(*trend, report.psi);
    }
    if (contrast) {
        report.c_contrast_p = std::inner_product(contrast->begin(), contrast->end(),
                                                 report.p.begin(), 0.0);
        report.c_contrast_psi = std::inner_product(contrast->begin(), contrast->end(),
                                                   report.psi.begin(), 0.0);
    }
    if (n_total) {
        const double scale = std::sqrt(static_cast<double>(*n_total));
        const double lead = contrast ? *report.c_contrast_p : (trend ? *report.c_hn : report.c_p);
        report.sqrt_n_scaled = scale * lead;
    }

    const bool all_discrete = std::all_of(specs.begin(), specs.end(),
                                          [](const auto& s) { return is_discrete(s); });
    if (all_discrete) {
        std::vector<DiscreteDist> ds;
        ds.reserve(d);
        for (const auto& s : specs) ds.push_back(std::get<DiscreteDist>(s));
        ExactNonCentralities exact;
        auto eff = exact_effects_q(ds, alloc);
        exact.p = std::move(eff.p);
        exact.psi = std::move(eff.psi);
        exact.c_p = quadratic_noncentrality(exact.p);
        exact.c_psi = quadratic_noncentrality(exact.psi);
        if (trend) {
            try {
                std::vector<Rational> trend_q;
                trend_q.reserve(d);
                for (double c : *trend) trend_q.push_back(Rational::from_double(c));
                exact.c_hn = linear_noncentrality(trend_q, exact.p);
                exact.c_hn_psi = linear_noncentrality(trend_q, exact.psi);
            } catch (const std::domain_error&) {
                // trend not rational; exact layer carries effects only
            }
        }
        report.exact = std::move(exact);
    }
    return report;
}

/// One row of the sub-group trajectory: strata (n11=n12 growing, n21=n22
/// fixed), interaction contrast non-centralities per ranking flavor.
struct SubgroupRow {
    std::int64_t n11{0};
    std::optional<double> c_mu; // only when all specs are normal
    double c_psi{0.0};
    double c_p{0.0};
    double sqrt_n_c_p{0.0};
};

/// Sub-group scenario: 2x2 specs in cell order (11, 12, 21, 22); the first
/// stratum (cells 11, 12) grows while the second stays fixed.
inline std::vector<SubgroupRow> subgroup_table(const std::vector<DistributionSpec>& specs,
                                               std::pair<std::int64_t, std::int64_t> fixed_sizes,
                                               const std::vector<std::int64_t>& growing_sizes,
                                               const std::vector<double>& contrast)
{
    if (specs.size() != 4)
        throw std::invalid_argument("subgroup_table: exactly 4 specs required");
    if (contrast.size() != 4)
        throw std::invalid_argument("subgroup_table: contrast must have 4 entries");
    if (fixed_sizes.first < 1 || fixed_sizes.second < 1)
        throw std::invalid_argument("subgroup_table: fixed sizes must be positive");

    const bool all_normal = std::none_of(specs.begin(), specs.end(),
                                         [](const auto& s) { return is_discrete(s); });
    std::optional<double> c_mu;
    if (all_normal) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 4; ++i) acc += contrast[i] * std::get<NormalDist>(specs[i]).mu;
        c_mu = acc;
    }

    std::vector<SubgroupRow> rows;
    rows.reserve(growing_sizes.size());
    for (std::int64_t m : growing_sizes) {
        if (m < 1) throw std::invalid_argument("subgroup_table: growing sizes must be positive");
        const Allocation alloc = Allocation::from_counts({m, m, fixed_sizes.first,
                                                          fixed_sizes.second});
        const auto [p, psi] = exact_effects(specs, alloc);
        SubgroupRow row;
        row.n11 = m;
        row.c_mu = c_mu;
        row.c_psi = std::inner_product(contrast.begin(), contrast.end(), psi.begin(), 0.0);
        row.c_p = std::inner_product(contrast.begin(), contrast.end(), p.begin(), 0.0);
        const double n_total = static_cast<double>(2 * m + fixed_sizes.first + fixed_sizes.second);
        row.sqrt_n_c_p = std::sqrt(n_total) * row.c_p;
        rows.push_back(row);
    }
    return rows;
}

} // namespace pseudorank
