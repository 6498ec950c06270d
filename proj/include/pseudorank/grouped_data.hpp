#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pseudorank {

/// Cell coordinates in a 2x2 layout; levels are 1-based (1 or 2).
struct FactorLabels {
    int a_level{1};
    int b_level{1};
    friend bool operator==(const FactorLabels& x, const FactorLabels& y)
    {
        return x.a_level == y.a_level && x.b_level == y.b_level;
    }
};

struct Group {
    std::string label;
    std::vector<double> values;
    std::optional<FactorLabels> factor;
};

/// Observations partitioned into d >= 2 groups, optionally carrying a full
/// 2x2 factor labeling. Validated on construction: finite values, nonempty
/// groups, and (when any factor label is present) a complete 2x2 cross.
class GroupedData {
public:
    explicit GroupedData(std::vector<Group> groups) : groups_(std::move(groups))
    {
        if (groups_.size() < 2)
            throw std::invalid_argument("GroupedData: need at least 2 groups");
        std::size_t labeled = 0;
        for (const auto& g : groups_) {
            if (g.values.empty())
                throw std::invalid_argument("GroupedData: empty group '" + g.label + "'");
            for (double v : g.values)
                if (!std::isfinite(v))
                    throw std::invalid_argument("GroupedData: non-finite value in group '" +
                                                g.label + "'");
            if (g.factor) ++labeled;
        }
        if (labeled != 0) {
            if (labeled != groups_.size() || groups_.size() != 4)
                throw std::invalid_argument(
                    "GroupedData: factorial use requires exactly 4 fully labeled groups");
            bool seen[2][2] = {};
            for (const auto& g : groups_) {
                const auto& f = *g.factor;
                if (f.a_level < 1 || f.a_level > 2 || f.b_level < 1 || f.b_level > 2)
                    throw std::invalid_argument("GroupedData: factor levels must be 1 or 2");
                if (seen[f.a_level - 1][f.b_level - 1])
                    throw std::invalid_argument("GroupedData: duplicate cell (" +
                                                std::to_string(f.a_level) + "," +
                                                std::to_string(f.b_level) + ")");
                seen[f.a_level - 1][f.b_level - 1] = true;
            }
        }
        total_ = 0;
        for (const auto& g : groups_) total_ += g.values.size();
    }

    std::size_t group_count() const { return groups_.size(); }
    std::size_t total_count() const { return total_; }
    const std::vector<Group>& groups() const { return groups_; }
    const Group& group(std::size_t i) const { return groups_.at(i); }

    std::vector<std::size_t> sizes() const
    {
        std::vector<std::size_t> n;
        n.reserve(groups_.size());
        for (const auto& g : groups_) n.push_back(g.values.size());
        return n;
    }

    bool is_two_by_two() const
    {
        return groups_.size() == 4 && groups_[0].factor.has_value();
    }

    /// Group indices ordered (a1,b1), (a1,b2), (a2,b1), (a2,b2).
    std::array<std::size_t, 4> cell_order() const
    {
        if (!is_two_by_two())
            throw std::invalid_argument("GroupedData: not a 2x2 layout");
        std::array<std::size_t, 4> order{};
        for (std::size_t i = 0; i < 4; ++i) {
            const auto& f = *groups_[i].factor;
            order[static_cast<std::size_t>((f.a_level - 1) * 2 + (f.b_level - 1))] = i;
        }
        return order;
    }

private:
    std::vector<Group> groups_;
    std::size_t total_{0};
};

/// Convenience constructor for unlabeled data.
inline GroupedData make_grouped(std::vector<std::vector<double>> values)
{
    std::vector<Group> gs;
    gs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        gs.push_back(Group{std::to_string(i + 1), std::move(values[i]), std::nullopt});
    return GroupedData(std::move(gs));
}

/// 2x2 constructor; values given in cell order (a1,b1), (a1,b2), (a2,b1), (a2,b2).
inline GroupedData make_two_by_two(std::array<std::vector<double>, 4> cells)
{
    std::vector<Group> gs;
    static constexpr std::array<FactorLabels, 4> labels{
        FactorLabels{1, 1}, FactorLabels{1, 2}, FactorLabels{2, 1}, FactorLabels{2, 2}};
    for (std::size_t i = 0; i < 4; ++i) {
        gs.push_back(Group{"a" + std::to_string(labels[i].a_level) + "b" +
                               std::to_string(labels[i].b_level),
                           std::move(cells[i]), labels[i]});
    }
    return GroupedData(std::move(gs));
}

} // namespace pseudorank
