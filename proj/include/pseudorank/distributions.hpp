#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "pseudorank/rational.hpp"

namespace pseudorank {

/// Finite discrete distribution. Support is strictly increasing; masses are
/// kept as exact rationals (normalized to sum exactly 1) so that
/// discrete-vs-discrete pairwise effects can be computed without rounding.
struct DiscreteDist {
    std::vector<double> support;
    std::vector<Rational> probs;

    DiscreteDist(std::vector<double> support_points, std::vector<Rational> masses)
        : support(std::move(support_points)), probs(std::move(masses))
    {
        if (support.empty() || support.size() != probs.size())
            throw std::invalid_argument("DiscreteDist: support/probs size mismatch");
        for (std::size_t i = 0; i + 1 < support.size(); ++i)
            if (!(support[i] < support[i + 1]))
                throw std::invalid_argument("DiscreteDist: support must be strictly increasing");
        Rational sum{0};
        for (const auto& p : probs) {
            if (p < Rational{0}) throw std::invalid_argument("DiscreteDist: negative mass");
            sum += p;
        }
        if (sum.num() == 0) throw std::invalid_argument("DiscreteDist: zero total mass");
        if (std::fabs(sum.to_double() - 1.0) > 1e-12)
            throw std::invalid_argument("DiscreteDist: masses must sum to 1");
        for (auto& p : probs) p /= sum;
    }

    /// From double masses; each is snapped to the nearest small rational.
    DiscreteDist(std::vector<double> support_points, const std::vector<double>& masses)
        : DiscreteDist(std::move(support_points), to_rationals(masses))
    {
    }

    /// Uniform over the given support (a fair die).
    static DiscreteDist uniform(std::vector<double> support_points)
    {
        const auto n = static_cast<std::int64_t>(support_points.size());
        return DiscreteDist(std::move(support_points),
                            std::vector<Rational>(static_cast<std::size_t>(n), Rational{1, n}));
    }

private:
    static std::vector<Rational> to_rationals(const std::vector<double>& masses)
    {
        std::vector<Rational> out;
        out.reserve(masses.size());
        for (double m : masses) out.push_back(Rational::from_double(m, 1000000, 1e-7));
        return out;
    }
};

struct NormalDist {
    double mu{0.0};
    double sigma{1.0};

    NormalDist(double mean, double stddev) : mu(mean), sigma(stddev)
    {
        if (!(sigma > 0.0) || !std::isfinite(mu) || !std::isfinite(sigma))
            throw std::invalid_argument("NormalDist: sigma must be positive and finite");
    }
};

using DistributionSpec = std::variant<DiscreteDist, NormalDist>;

inline bool is_discrete(const DistributionSpec& s)
{
    return std::holds_alternative<DiscreteDist>(s);
}

/// Relative (or absolute) group sizes as exact rationals; all entries > 0.
class Allocation {
public:
    explicit Allocation(std::vector<Rational> sizes) : sizes_(std::move(sizes))
    {
        if (sizes_.empty()) throw std::invalid_argument("Allocation: empty");
        for (const auto& s : sizes_)
            if (!(s > Rational{0}))
                throw std::invalid_argument("Allocation: entries must be positive");
    }

    static Allocation from_counts(const std::vector<std::int64_t>& counts)
    {
        std::vector<Rational> sizes;
        sizes.reserve(counts.size());
        for (auto c : counts) sizes.emplace_back(c);
        return Allocation(std::move(sizes));
    }

    static Allocation from_doubles(const std::vector<double>& sizes)
    {
        std::vector<Rational> out;
        out.reserve(sizes.size());
        for (double s : sizes) out.push_back(Rational::from_double(s, 1000000, 1e-7));
        return Allocation(std::move(out));
    }

    std::size_t size() const { return sizes_.size(); }
    const std::vector<Rational>& sizes() const { return sizes_; }

    /// n_i / N as exact rationals summing to 1.
    std::vector<Rational> fractions() const
    {
        Rational total{0};
        for (const auto& s : sizes_) total += s;
        std::vector<Rational> out;
        out.reserve(sizes_.size());
        for (const auto& s : sizes_) out.push_back(s / total);
        return out;
    }

private:
    std::vector<Rational> sizes_;
};

} // namespace pseudorank
