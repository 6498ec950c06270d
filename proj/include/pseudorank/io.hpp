#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pseudorank/confidence.hpp"
#include "pseudorank/distributions.hpp"
#include "pseudorank/effects.hpp"
#include "pseudorank/grouped_data.hpp"
#include "pseudorank/hypothesis_tests.hpp"
#include "pseudorank/analytic.hpp"
#include "pseudorank/ranking.hpp"
#include "pseudorank/simulate.hpp"
#include "pseudorank/version.hpp"

namespace pseudorank {

/// Bad flags, bad schemas, bad parameter values. CLI exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable or malformed data files. CLI exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// CSV ingestion (long format, RFC-4180 quoting, UTF-8, LF or CRLF)
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                       const std::string& filename)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    std::size_t line = 1;
    auto end_field = [&] { row.push_back(std::move(field)); field.clear(); };
    auto end_row = [&] {
        end_field();
        if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
        row.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
                if (c == '\n') ++line;
            }
        } else if (c == '"') {
            if (!field.empty())
                throw DataError(filename + ":" + std::to_string(line) +
                                ": stray quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
            ++line;
        } else {
            field += c;
        }
    }
    if (quoted) throw DataError(filename + ": unterminated quoted field");
    if (!field.empty() && field.back() == '\r') field.pop_back();
    if (!field.empty() || row.size() > 0) end_row();
    return rows;
}

inline std::string lower(std::string s)
{
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline double parse_value(const std::string& field, const std::string& filename,
                          std::size_t record)
{
    if (field.empty())
        throw DataError(filename + ": row " + std::to_string(record) + ": empty value field");
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &consumed);
    } catch (const std::exception&) {
        throw DataError(filename + ": row " + std::to_string(record) + ": value '" + field +
                        "' is not numeric");
    }
    if (consumed != field.size() || !std::isfinite(v))
        throw DataError(filename + ": row " + std::to_string(record) + ": value '" + field +
                        "' is not a finite number");
    return v;
}

} // namespace detail

/// Read long-format CSV: header `group,value` (one-way) or `a,b,value` (2x2).
/// Group and level order follow first appearance in the file.
inline GroupedData read_csv(const std::string& filename)
{
    std::ifstream in(filename, std::ios::binary);
    if (!in) throw DataError(filename + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto rows = detail::parse_csv(buffer.str(), filename);
    if (rows.size() < 2) throw DataError(filename + ": no data rows");

    std::vector<std::string> header;
    for (const auto& h : rows[0]) header.push_back(detail::lower(h));
    const bool one_way = header == std::vector<std::string>{"group", "value"};
    const bool two_way = header == std::vector<std::string>{"a", "b", "value"};
    if (!one_way && !two_way)
        throw DataError(filename + ": header must be 'group,value' or 'a,b,value'");

    if (one_way) {
        std::vector<Group> groups;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() != 2)
                throw DataError(filename + ": row " + std::to_string(r + 1) +
                                ": expected 2 fields, got " + std::to_string(rows[r].size()));
            const std::string& label = rows[r][0];
            if (label.empty())
                throw DataError(filename + ": row " + std::to_string(r + 1) +
                                ": empty group label");
            const double v = detail::parse_value(rows[r][1], filename, r + 1);
            auto it = std::find_if(groups.begin(), groups.end(),
                                   [&](const Group& g) { return g.label == label; });
            if (it == groups.end()) {
                groups.push_back(Group{label, {v}, std::nullopt});
            } else {
                it->values.push_back(v);
            }
        }
        try {
            return GroupedData(std::move(groups));
        } catch (const std::invalid_argument& e) {
            throw DataError(filename + ": " + e.what());
        }
    }

    std::vector<std::string> a_levels, b_levels;
    auto level_index = [&filename](std::vector<std::string>& levels, const std::string& name,
                                   const std::string& which, std::size_t record) {
        if (name.empty())
            throw DataError(filename + ": row " + std::to_string(record) + ": empty " + which +
                            " label");
        for (std::size_t i = 0; i < levels.size(); ++i)
            if (levels[i] == name) return static_cast<int>(i + 1);
        if (levels.size() == 2)
            throw DataError(filename + ": row " + std::to_string(record) + ": third level '" +
                            name + "' for factor " + which + " (exactly two allowed)");
        levels.push_back(name);
        return static_cast<int>(levels.size());
    };

    struct CellRow {
        FactorLabels f;
        std::string label;
        std::vector<double> values;
    };
    std::vector<CellRow> cells;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 3)
            throw DataError(filename + ": row " + std::to_string(r + 1) +
                            ": expected 3 fields, got " + std::to_string(rows[r].size()));
        const int a = level_index(a_levels, rows[r][0], "a", r + 1);
        const int b = level_index(b_levels, rows[r][1], "b", r + 1);
        const double v = detail::parse_value(rows[r][2], filename, r + 1);
        const FactorLabels f{a, b};
        auto it = std::find_if(cells.begin(), cells.end(),
                               [&](const CellRow& c) { return c.f == f; });
        if (it == cells.end()) {
            cells.push_back(CellRow{f, rows[r][0] + ":" + rows[r][1], {v}});
        } else {
            it->values.push_back(v);
        }
    }
    if (cells.size() != 4)
        throw DataError(filename + ": 2x2 layout requires all four cells, found " +
                        std::to_string(cells.size()));
    // arrange (a1,b1), (a1,b2), (a2,b1), (a2,b2)
    std::vector<Group> groups(4);
    for (auto& c : cells) {
        const auto slot = static_cast<std::size_t>((c.f.a_level - 1) * 2 + (c.f.b_level - 1));
        groups[slot] = Group{c.label, std::move(c.values), c.f};
    }
    try {
        return GroupedData(std::move(groups));
    } catch (const std::invalid_argument& e) {
        throw DataError(filename + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// JSON scenario / plan ingestion
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json load_json(const std::string& filename)
{
    std::ifstream in(filename, std::ios::binary);
    if (!in) throw DataError(filename + ": cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(filename + ": " + e.what());
    }
}

inline Rational rational_from_json(const nlohmann::json& j, const std::string& path)
{
    if (j.is_number_integer()) return Rational{j.get<std::int64_t>()};
    if (j.is_number()) {
        try {
            return Rational::from_double(j.get<double>());
        } catch (const std::domain_error&) {
            throw UsageError(path + ": number has no small exact rational form");
        }
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational{std::stoll(s)};
            return Rational{std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
        } catch (const std::exception&) {
            throw UsageError(path + ": '" + s + "' is not a rational (use e.g. \"2/3\")");
        }
    }
    throw UsageError(path + ": expected a number or a \"p/q\" string");
}

inline DistributionSpec spec_from_json(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_object() || !j.contains("type"))
        throw UsageError(path + ": expected an object with a \"type\" field");
    const auto type = j.at("type").get<std::string>();
    try {
        if (type == "discrete") {
            if (!j.contains("support") || !j.contains("probs"))
                throw UsageError(path + ": discrete spec needs \"support\" and \"probs\"");
            auto support = j.at("support").get<std::vector<double>>();
            std::vector<Rational> probs;
            const auto& jp = j.at("probs");
            for (std::size_t i = 0; i < jp.size(); ++i)
                probs.push_back(
                    rational_from_json(jp[i], path + ".probs[" + std::to_string(i) + "]"));
            return DiscreteDist(std::move(support), std::move(probs));
        }
        if (type == "normal") {
            if (!j.contains("mu") || !j.contains("sigma"))
                throw UsageError(path + ": normal spec needs \"mu\" and \"sigma\"");
            return NormalDist(j.at("mu").get<double>(), j.at("sigma").get<double>());
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    throw UsageError(path + ".type: unknown type '" + type + "' (discrete | normal)");
}

inline Allocation allocation_from_json(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_array() || j.empty()) throw UsageError(path + ": expected a non-empty array");
    std::vector<Rational> sizes;
    for (std::size_t i = 0; i < j.size(); ++i)
        sizes.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    try {
        return Allocation(std::move(sizes));
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
}

inline std::vector<double> contrast_from_json(const nlohmann::json& j, std::size_t d,
                                              const std::string& path)
{
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (d != 4)
            throw UsageError(path + ": named contrasts need exactly 4 groups/specs");
        std::array<double, 4> c{};
        if (name == "A") c = contrast_vector(FactorialContrast::main_a);
        else if (name == "B") c = contrast_vector(FactorialContrast::main_b);
        else if (name == "AB") c = contrast_vector(FactorialContrast::interaction_ab);
        else throw UsageError(path + ": unknown contrast '" + name + "' (A | B | AB)");
        return {c.begin(), c.end()};
    }
    if (!j.is_array())
        throw UsageError(path + ": expected an array or a contrast name (A | B | AB)");
    auto v = j.get<std::vector<double>>();
    if (v.size() != d)
        throw UsageError(path + ": length " + std::to_string(v.size()) + " != number of specs " +
                         std::to_string(d));
    return v;
}

} // namespace detail

/// A scenario bundles d specs + allocation(s) + optional trend/contrast
/// vectors + optional absolute N; 2x2 scenarios list specs in cell order
/// (a1,b1), (a1,b2), (a2,b1), (a2,b2). The optional "allocations" list backs
/// `analytic --table1`; the optional "subgroup" block backs `--subgroup`.
struct Scenario {
    std::vector<DistributionSpec> specs;
    std::optional<Allocation> alloc;
    std::vector<Allocation> allocations;
    std::optional<std::vector<double>> trend;
    std::optional<std::vector<double>> contrast;
    std::optional<std::int64_t> n_total;

    struct Subgroup {
        std::pair<std::int64_t, std::int64_t> fixed{50, 50};
        std::vector<std::int64_t> growing;
        std::vector<double> contrast;
    };
    std::optional<Subgroup> subgroup;
};

inline Scenario scenario_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("specs"))
        throw UsageError("scenario: expected an object with a \"specs\" array");
    Scenario sc;
    const auto& js = j.at("specs");
    if (!js.is_array() || js.size() < 2)
        throw UsageError("scenario.specs: need at least 2 specs");
    for (std::size_t i = 0; i < js.size(); ++i)
        sc.specs.push_back(
            detail::spec_from_json(js[i], "scenario.specs[" + std::to_string(i) + "]"));
    const std::size_t d = sc.specs.size();

    if (j.contains("alloc")) {
        sc.alloc = detail::allocation_from_json(j.at("alloc"), "scenario.alloc");
        if (sc.alloc->size() != d)
            throw UsageError("scenario.alloc: length != number of specs");
    }
    if (j.contains("allocations")) {
        const auto& ja = j.at("allocations");
        if (!ja.is_array()) throw UsageError("scenario.allocations: expected an array of arrays");
        for (std::size_t i = 0; i < ja.size(); ++i) {
            auto a = detail::allocation_from_json(ja[i],
                                                  "scenario.allocations[" + std::to_string(i) + "]");
            if (a.size() != d)
                throw UsageError("scenario.allocations[" + std::to_string(i) +
                                 "]: length != number of specs");
            sc.allocations.push_back(std::move(a));
        }
    }
    if (j.contains("trend")) {
        auto t = j.at("trend").get<std::vector<double>>();
        if (t.size() != d) throw UsageError("scenario.trend: length != number of specs");
        sc.trend = std::move(t);
    }
    if (j.contains("contrast"))
        sc.contrast = detail::contrast_from_json(j.at("contrast"), d, "scenario.contrast");
    if (j.contains("N")) {
        if (!j.at("N").is_number_integer() || j.at("N").get<std::int64_t>() < 1)
            throw UsageError("scenario.N: expected a positive integer");
        sc.n_total = j.at("N").get<std::int64_t>();
    }
    if (j.contains("subgroup")) {
        const auto& js2 = j.at("subgroup");
        Scenario::Subgroup sub;
        if (!js2.contains("growing"))
            throw UsageError("scenario.subgroup: needs a \"growing\" array");
        if (js2.contains("fixed")) {
            auto f = js2.at("fixed").get<std::vector<std::int64_t>>();
            if (f.size() != 2) throw UsageError("scenario.subgroup.fixed: expected [n21, n22]");
            sub.fixed = {f[0], f[1]};
        }
        sub.growing = js2.at("growing").get<std::vector<std::int64_t>>();
        sub.contrast = js2.contains("contrast")
                           ? detail::contrast_from_json(js2.at("contrast"), 4,
                                                        "scenario.subgroup.contrast")
                           : std::vector<double>{1.0, -1.0, -1.0, 1.0};
        sc.subgroup = std::move(sub);
    }
    return sc;
}

inline Scenario read_scenario(const std::string& filename)
{
    return scenario_from_json(detail::load_json(filename));
}

inline SimulationPlan plan_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw UsageError("plan: expected an object");
    SimulationPlan plan;
    if (!j.contains("specs") || !j.at("specs").is_array())
        throw UsageError("plan.specs: expected an array");
    const auto& js = j.at("specs");
    for (std::size_t i = 0; i < js.size(); ++i)
        plan.specs.push_back(
            detail::spec_from_json(js[i], "plan.specs[" + std::to_string(i) + "]"));

    if (!j.contains("alloc")) throw UsageError("plan.alloc: required (absolute group sizes)");
    try {
        plan.alloc = j.at("alloc").get<std::vector<std::int64_t>>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError("plan.alloc: expected an array of integers");
    }

    if (j.contains("metric")) {
        const auto m = j.at("metric").get<std::string>();
        if (m == "rejection_rate") plan.metric = Metric::rejection_rate;
        else if (m == "sign_frequency") plan.metric = Metric::sign_frequency;
        else if (m == "coverage") plan.metric = Metric::coverage;
        else throw UsageError("plan.metric: unknown metric '" + m + "'");
    }

    if (plan.metric != Metric::coverage) {
        if (!j.contains("test")) throw UsageError("plan.test: required for this metric");
        const auto& jt = j.at("test");
        const auto method = jt.contains("method") ? jt.at("method").get<std::string>() : "kw";
        if (method == "kw") plan.test.method = TestMethod::kruskal_wallis;
        else if (method == "hn") plan.test.method = TestMethod::hn_trend;
        else if (method == "contrast") plan.test.method = TestMethod::contrast;
        else if (method == "anova") plan.test.method = TestMethod::anova;
        else throw UsageError("plan.test.method: unknown method '" + method + "'");
        if (jt.contains("ranking")) {
            const auto r = jt.at("ranking").get<std::string>();
            if (r == "ordinary") plan.test.ranking = Ranking::ordinary;
            else if (r == "pseudo") plan.test.ranking = Ranking::pseudo;
            else throw UsageError("plan.test.ranking: 'ordinary' or 'pseudo'");
        }
        if (jt.contains("trend"))
            plan.test.trend = jt.at("trend").get<std::vector<double>>();
        if (jt.contains("contrast"))
            plan.test.contrast = detail::contrast_from_json(jt.at("contrast"), plan.specs.size(),
                                                            "plan.test.contrast");
        if (jt.contains("side")) {
            const auto s = jt.at("side").get<std::string>();
            if (s == "two_sided") plan.test.side = TestSide::two_sided;
            else if (s == "increasing") plan.test.side = TestSide::increasing;
            else if (s == "decreasing") plan.test.side = TestSide::decreasing;
            else throw UsageError("plan.test.side: two_sided | increasing | decreasing");
        }
        if (jt.contains("variance")) {
            const auto v = jt.at("variance").get<std::string>();
            if (v == "influence") plan.test.variance = VarianceModel::influence;
            else if (v == "strong_null" || v == "strong-null")
                plan.test.variance = VarianceModel::strong_null;
            else throw UsageError("plan.test.variance: influence | strong_null");
        }
    }

    if (j.contains("alpha")) plan.alpha = j.at("alpha").get<double>();
    if (j.contains("reps")) plan.reps = j.at("reps").get<std::int64_t>();
    if (j.contains("seed")) plan.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("level")) plan.level = j.at("level").get<double>();
    try {
        plan.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("plan: ") + e.what());
    }
    return plan;
}

inline SimulationPlan read_plan(const std::string& filename)
{
    return plan_from_json(detail::load_json(filename));
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

inline const char* to_string(Ranking r) { return r == Ranking::ordinary ? "ordinary" : "pseudo"; }

inline const char* to_string(TestMethod m)
{
    switch (m) {
        case TestMethod::kruskal_wallis: return "kruskal_wallis";
        case TestMethod::hn_trend: return "hn_trend";
        case TestMethod::contrast: return "contrast";
        case TestMethod::anova: return "anova";
    }
    return "?";
}

inline const char* to_string(TestSide s)
{
    switch (s) {
        case TestSide::two_sided: return "two_sided";
        case TestSide::increasing: return "increasing";
        case TestSide::decreasing: return "decreasing";
    }
    return "?";
}

inline const char* to_string(Metric m)
{
    switch (m) {
        case Metric::rejection_rate: return "rejection_rate";
        case Metric::sign_frequency: return "sign_frequency";
        case Metric::coverage: return "coverage";
    }
    return "?";
}

inline nlohmann::json to_json(const RankAssignment& a, const GroupedData& data)
{
    nlohmann::json groups = nlohmann::json::array();
    const auto means = a.group_means();
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        groups.push_back({{"label", data.group(i).label},
                          {"ranks", a.entries[i]},
                          {"mean", means[i]}});
    }
    return {{"kind", a.kind == Ranking::ordinary ? "ordinary" : "pseudo"}, {"groups", groups}};
}

inline nlohmann::json to_json(const EffectVector& e)
{
    return {{"kind", e.kind == EffectKind::weighted_p ? "weighted_p" : "unweighted_psi"},
            {"values", e.values},
            {"group_sizes", e.group_sizes},
            {"N", e.total_count}};
}

inline EffectVector effect_vector_from_json(const nlohmann::json& j)
{
    EffectVector e;
    e.kind = j.at("kind").get<std::string>() == "weighted_p" ? EffectKind::weighted_p
                                                             : EffectKind::unweighted_psi;
    e.values = j.at("values").get<std::vector<double>>();
    e.group_sizes = j.at("group_sizes").get<std::vector<std::size_t>>();
    e.total_count = j.at("N").get<std::size_t>();
    return e;
}

inline nlohmann::json to_json(const PairwiseEffectMatrix& m)
{
    return {{"w", m.w}};
}

inline nlohmann::json to_json(const TestReport& r)
{
    nlohmann::json j{{"method", to_string(r.method)},
                     {"ranking", to_string(r.ranking)},
                     {"statistic", r.statistic},
                     {"df", r.df},
                     {"p_value", r.p_value},
                     {"side", to_string(r.side)},
                     {"degenerate", r.degenerate}};
    if (r.df2 != 0.0) j["df2"] = r.df2;
    if (r.contrast_used) j["contrast"] = *r.contrast_used;
    if (r.numerator) j["numerator"] = *r.numerator;
    if (r.statistic_squared) j["statistic_squared"] = *r.statistic_squared;
    return j;
}

inline TestReport test_report_from_json(const nlohmann::json& j)
{
    TestReport r;
    const auto method = j.at("method").get<std::string>();
    if (method == "kruskal_wallis") r.method = TestMethod::kruskal_wallis;
    else if (method == "hn_trend") r.method = TestMethod::hn_trend;
    else if (method == "contrast") r.method = TestMethod::contrast;
    else r.method = TestMethod::anova;
    r.ranking = j.at("ranking").get<std::string>() == "ordinary" ? Ranking::ordinary
                                                                 : Ranking::pseudo;
    r.statistic = j.at("statistic").get<double>();
    r.df = j.at("df").get<double>();
    r.p_value = j.at("p_value").get<double>();
    const auto side = j.at("side").get<std::string>();
    r.side = side == "two_sided" ? TestSide::two_sided
                                 : (side == "increasing" ? TestSide::increasing
                                                         : TestSide::decreasing);
    r.degenerate = j.at("degenerate").get<bool>();
    if (j.contains("df2")) r.df2 = j.at("df2").get<double>();
    if (j.contains("contrast")) r.contrast_used = j.at("contrast").get<std::vector<double>>();
    if (j.contains("numerator")) r.numerator = j.at("numerator").get<double>();
    if (j.contains("statistic_squared"))
        r.statistic_squared = j.at("statistic_squared").get<double>();
    return r;
}

inline nlohmann::json to_json(const IntervalReport& r)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"label", row.label},
                        {"lower", row.lower},
                        {"estimate", row.estimate},
                        {"upper", row.upper}});
    nlohmann::json j{{"kind", r.kind == IntervalKind::psi_ci ? "psi_ci" : "p_interval"},
                     {"level", r.level},
                     {"rows", rows}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline IntervalReport interval_report_from_json(const nlohmann::json& j)
{
    IntervalReport r;
    r.kind = j.at("kind").get<std::string>() == "psi_ci" ? IntervalKind::psi_ci
                                                         : IntervalKind::p_interval;
    r.level = j.at("level").get<double>();
    for (const auto& row : j.at("rows"))
        r.rows.push_back(IntervalRow{row.at("label").get<std::string>(),
                                     row.at("lower").get<double>(),
                                     row.at("estimate").get<double>(),
                                     row.at("upper").get<double>()});
    if (j.contains("note")) r.note = j.at("note").get<std::string>();
    return r;
}

inline nlohmann::json to_json(const NonCentralityReport& r)
{
    nlohmann::json j{{"p", r.p}, {"psi", r.psi}, {"c_p", r.c_p}, {"c_psi", r.c_psi}};
    if (r.c_hn) j["c_hn"] = *r.c_hn;
    if (r.c_hn_psi) j["c_hn_psi"] = *r.c_hn_psi;
    if (r.c_contrast_p) j["c_contrast_p"] = *r.c_contrast_p;
    if (r.c_contrast_psi) j["c_contrast_psi"] = *r.c_contrast_psi;
    if (r.sqrt_n_scaled) j["sqrt_n_scaled"] = *r.sqrt_n_scaled;
    if (r.exact) {
        nlohmann::json e;
        auto strings = [](const std::vector<Rational>& v) {
            std::vector<std::string> out;
            out.reserve(v.size());
            for (const auto& q : v) out.push_back(q.to_string());
            return out;
        };
        e["p"] = strings(r.exact->p);
        e["psi"] = strings(r.exact->psi);
        e["c_p"] = r.exact->c_p.to_string();
        e["c_psi"] = r.exact->c_psi.to_string();
        if (r.exact->c_hn) e["c_hn"] = r.exact->c_hn->to_string();
        if (r.exact->c_hn_psi) e["c_hn_psi"] = r.exact->c_hn_psi->to_string();
        j["exact"] = e;
    }
    return j;
}

inline nlohmann::json to_json(const std::vector<SubgroupRow>& rows)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j{{"n11", r.n11},
                         {"c_psi", r.c_psi},
                         {"c_p", r.c_p},
                         {"sqrt_n_c_p", r.sqrt_n_c_p}};
        if (r.c_mu) j["c_mu"] = *r.c_mu;
        out.push_back(j);
    }
    return out;
}

inline nlohmann::json to_json(const SimulationResult& r)
{
    nlohmann::json j{{"metric", to_string(r.metric)},
                     {"reps", r.reps},
                     {"seed", r.seed},
                     {"degenerate_count", r.degenerate_count}};
    if (r.rejection_rate) j["rejection_rate"] = *r.rejection_rate;
    if (r.rejection_rate_se) j["rejection_rate_se"] = *r.rejection_rate_se;
    if (r.positive_rate) j["positive_rate"] = *r.positive_rate;
    if (r.negative_rate) j["negative_rate"] = *r.negative_rate;
    if (r.mean_numerator) j["mean_numerator"] = *r.mean_numerator;
    if (r.sd_numerator) j["sd_numerator"] = *r.sd_numerator;
    if (r.mean_numerator_se) j["mean_numerator_se"] = *r.mean_numerator_se;
    if (r.coverage) j["coverage"] = *r.coverage;
    if (r.coverage_se) j["coverage_se"] = *r.coverage_se;
    if (r.truth) j["truth"] = *r.truth;
    return j;
}

inline SimulationResult simulation_result_from_json(const nlohmann::json& j)
{
    SimulationResult r;
    const auto m = j.at("metric").get<std::string>();
    r.metric = m == "rejection_rate"
                   ? Metric::rejection_rate
                   : (m == "sign_frequency" ? Metric::sign_frequency : Metric::coverage);
    r.reps = j.at("reps").get<std::int64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.degenerate_count = j.at("degenerate_count").get<std::int64_t>();
    auto opt = [&](const char* key) -> std::optional<double> {
        if (j.contains(key)) return j.at(key).get<double>();
        return std::nullopt;
    };
    r.rejection_rate = opt("rejection_rate");
    r.rejection_rate_se = opt("rejection_rate_se");
    r.positive_rate = opt("positive_rate");
    r.negative_rate = opt("negative_rate");
    r.mean_numerator = opt("mean_numerator");
    r.sd_numerator = opt("sd_numerator");
    r.mean_numerator_se = opt("mean_numerator_se");
    auto optv = [&](const char* key) -> std::optional<std::vector<double>> {
        if (j.contains(key)) return j.at(key).get<std::vector<double>>();
        return std::nullopt;
    };
    r.coverage = optv("coverage");
    r.coverage_se = optv("coverage_se");
    r.truth = optv("truth");
    return r;
}

/// Wrap a payload in the output envelope: tool name/version, the invoking
/// subcommand, and (for simulations) the seed echoed at top level.
inline nlohmann::json envelope(const std::string& command, nlohmann::json payload,
                               std::optional<std::uint64_t> seed = {})
{
    nlohmann::json j{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                     {"command", command},
                     {"payload", std::move(payload)}};
    if (seed) j["seed"] = *seed;
    return j;
}

} // namespace pseudorank
