// pseudorank command line: rank/pseudo-rank computation, relative-effect
// estimation, rank and pseudo-rank tests, the analytic non-centrality
// oracle, and seeded Monte Carlo simulation, over long-format CSV data and
// JSON scenario/plan files.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pseudorank/io.hpp"
#include "pseudorank/pseudorank.hpp"

namespace {

using nlohmann::json;
using namespace pseudorank;

enum class Format { text, csv, json_fmt };

Format default_format()
{
    const char* env = std::getenv("PSEUDORANK_FORMAT");
    if (!env) return Format::text;
    const std::string s = env;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json_fmt;
    return Format::text;
}

Format parse_format(const std::string& s)
{
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json_fmt;
    throw UsageError("--format: expected text | csv | json");
}

std::string fmt(double v, const char* spec = "%.10g")
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

// ---------------------------------------------------------------------------
// per-command text/csv rendering
// ---------------------------------------------------------------------------

void render_ranks(std::ostream& os, Format f, const RankAssignment& a, const GroupedData& data)
{
    const auto means = a.group_means();
    if (f == Format::csv) {
        os << "group,index,value,rank\n";
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            for (std::size_t k = 0; k < a.entries[i].size(); ++k)
                os << csv_quote(data.group(i).label) << "," << (k + 1) << ","
                   << fmt(data.group(i).values[k]) << "," << fmt(a.entries[i][k]) << "\n";
        return;
    }
    os << (a.kind == Ranking::ordinary ? "ranks" : "pseudo-ranks") << "\n";
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        os << "  " << data.group(i).label << " (n=" << a.entries[i].size() << "): ";
        for (std::size_t k = 0; k < a.entries[i].size(); ++k)
            os << (k ? " " : "") << fmt(a.entries[i][k], "%g");
        os << "\n    mean " << fmt(means[i]) << "\n";
    }
}

void render_effects(std::ostream& os, Format f, const EffectVector& e, const GroupedData& data,
                    const std::optional<IntervalReport>& intervals)
{
    const char* kind = e.kind == EffectKind::weighted_p ? "p" : "psi";
    if (f == Format::csv) {
        os << "group,n," << kind;
        if (intervals) os << ",lower,upper";
        os << "\n";
        for (std::size_t i = 0; i < e.values.size(); ++i) {
            os << csv_quote(data.group(i).label) << "," << e.group_sizes[i] << ","
               << fmt(e.values[i]);
            if (intervals)
                os << "," << fmt(intervals->rows[i].lower) << ","
                   << fmt(intervals->rows[i].upper);
            os << "\n";
        }
        return;
    }
    os << (e.kind == EffectKind::weighted_p ? "weighted relative effects p_i"
                                            : "unweighted relative effects psi_i");
    if (intervals) os << " with " << fmt(100 * intervals->level, "%g") << "% limits";
    os << "\n";
    for (std::size_t i = 0; i < e.values.size(); ++i) {
        os << "  " << data.group(i).label << " (n=" << e.group_sizes[i]
           << "): " << fmt(e.values[i], "%.6f");
        if (intervals)
            os << "  [" << fmt(intervals->rows[i].lower, "%.6f") << ", "
               << fmt(intervals->rows[i].upper, "%.6f") << "]";
        os << "\n";
    }
    if (intervals && !intervals->note.empty()) os << "note: " << intervals->note << "\n";
}

void render_test(std::ostream& os, Format f, const TestReport& r)
{
    if (f == Format::csv) {
        os << "method,ranking,statistic,df,p_value,degenerate\n"
           << to_string(r.method) << "," << to_string(r.ranking) << "," << fmt(r.statistic)
           << "," << fmt(r.df) << "," << fmt(r.p_value) << "," << (r.degenerate ? 1 : 0)
           << "\n";
        return;
    }
    os << to_string(r.method) << " (" << to_string(r.ranking) << " ranking)\n";
    if (r.degenerate) {
        os << "  degenerate statistic (zero variance); p-value 1\n";
        return;
    }
    os << "  statistic " << fmt(r.statistic, "%.6g");
    if (r.statistic_squared) os << "  (squared " << fmt(*r.statistic_squared, "%.6g") << ")";
    os << "\n  df " << fmt(r.df, "%.6g");
    if (r.df2 != 0.0) os << ", " << fmt(r.df2, "%.6g");
    os << "\n  p-value " << fmt(r.p_value, "%.6g") << " (" << to_string(r.side) << ")\n";
    if (r.numerator) os << "  numerator " << fmt(*r.numerator, "%.6g") << "\n";
}

void render_noncentralities(std::ostream& os, Format f, const NonCentralityReport& r)
{
    if (f == Format::csv) {
        os << "quantity,value,exact\n";
        auto row = [&](const std::string& name, double v, const std::string& ex) {
            os << name << "," << fmt(v) << "," << ex << "\n";
        };
        for (std::size_t i = 0; i < r.p.size(); ++i)
            row("p" + std::to_string(i + 1), r.p[i],
                r.exact ? r.exact->p[i].to_string() : "");
        for (std::size_t i = 0; i < r.psi.size(); ++i)
            row("psi" + std::to_string(i + 1), r.psi[i],
                r.exact ? r.exact->psi[i].to_string() : "");
        row("c_p", r.c_p, r.exact ? r.exact->c_p.to_string() : "");
        row("c_psi", r.c_psi, r.exact ? r.exact->c_psi.to_string() : "");
        if (r.c_hn) row("c_hn", *r.c_hn,
                        r.exact && r.exact->c_hn ? r.exact->c_hn->to_string() : "");
        if (r.c_hn_psi) row("c_hn_psi", *r.c_hn_psi,
                            r.exact && r.exact->c_hn_psi ? r.exact->c_hn_psi->to_string() : "");
        if (r.c_contrast_p) row("c_contrast_p", *r.c_contrast_p, "");
        if (r.c_contrast_psi) row("c_contrast_psi", *r.c_contrast_psi, "");
        if (r.sqrt_n_scaled) row("sqrt_n_scaled", *r.sqrt_n_scaled, "");
        return;
    }
    os << "p   = (";
    for (std::size_t i = 0; i < r.p.size(); ++i) os << (i ? ", " : "") << fmt(r.p[i], "%.6f");
    os << ")\npsi = (";
    for (std::size_t i = 0; i < r.psi.size(); ++i) os << (i ? ", " : "") << fmt(r.psi[i], "%.6f");
    os << ")\nc_p = " << fmt(r.c_p, "%.6g") << ", c_psi = " << fmt(r.c_psi, "%.6g") << "\n";
    if (r.c_hn)
        os << "c_hn = " << fmt(*r.c_hn, "%.6g")
           << (r.exact && r.exact->c_hn ? " (= " + r.exact->c_hn->to_string() + ")" : "")
           << ", c_hn_psi = " << fmt(*r.c_hn_psi, "%.6g") << "\n";
    if (r.c_contrast_p)
        os << "c_contrast_p = " << fmt(*r.c_contrast_p, "%.6g")
           << ", c_contrast_psi = " << fmt(*r.c_contrast_psi, "%.6g") << "\n";
    if (r.sqrt_n_scaled) os << "sqrt(N)-scaled = " << fmt(*r.sqrt_n_scaled, "%.6g") << "\n";
}

void render_subgroup(std::ostream& os, Format f, const std::vector<SubgroupRow>& rows)
{
    if (f == Format::csv) {
        os << "n11,c_mu,c_psi,c_p,sqrt_n_c_p\n";
        for (const auto& r : rows)
            os << r.n11 << "," << (r.c_mu ? fmt(*r.c_mu) : "") << "," << fmt(r.c_psi) << ","
               << fmt(r.c_p) << "," << fmt(r.sqrt_n_c_p) << "\n";
        return;
    }
    os << "n11=n12   c_mu      c_psi     c_p       sqrt(N)*c_p\n";
    for (const auto& r : rows) {
        char line[128];
        if (r.c_mu)
            std::snprintf(line, sizeof(line), "%7lld   %-8.4g  %-8.4g  %-8.4f  %8.2f",
                          static_cast<long long>(r.n11), *r.c_mu, r.c_psi, r.c_p, r.sqrt_n_c_p);
        else
            std::snprintf(line, sizeof(line), "%7lld   %-8s  %-8.4g  %-8.4f  %8.2f",
                          static_cast<long long>(r.n11), "-", r.c_psi, r.c_p, r.sqrt_n_c_p);
        os << line << "\n";
    }
}

void render_simulation(std::ostream& os, Format f, const SimulationResult& r)
{
    if (f == Format::csv) {
        os << "metric,reps,seed,degenerate_count,value,se\n";
        if (r.rejection_rate)
            os << to_string(r.metric) << "," << r.reps << "," << r.seed << ","
               << r.degenerate_count << "," << fmt(*r.rejection_rate) << ","
               << fmt(*r.rejection_rate_se) << "\n";
        else if (r.mean_numerator)
            os << to_string(r.metric) << "," << r.reps << "," << r.seed << ","
               << r.degenerate_count << "," << fmt(*r.mean_numerator) << ","
               << fmt(*r.mean_numerator_se) << "\n";
        else if (r.coverage)
            for (std::size_t i = 0; i < r.coverage->size(); ++i)
                os << "coverage_group" << (i + 1) << "," << r.reps << "," << r.seed << ","
                   << r.degenerate_count << "," << fmt((*r.coverage)[i]) << ","
                   << fmt((*r.coverage_se)[i]) << "\n";
        return;
    }
    os << to_string(r.metric) << " over " << r.reps << " replications (seed " << r.seed << ")\n";
    if (r.degenerate_count > 0)
        os << "  degenerate replications: " << r.degenerate_count << "\n";
    if (r.rejection_rate)
        os << "  rejection rate " << fmt(*r.rejection_rate, "%.4f") << " (mc se "
           << fmt(*r.rejection_rate_se, "%.4f") << ")\n";
    if (r.positive_rate)
        os << "  numerator sign: +" << fmt(*r.positive_rate, "%.4f") << " / -"
           << fmt(*r.negative_rate, "%.4f") << "\n  mean numerator "
           << fmt(*r.mean_numerator, "%.6g") << " (mc se " << fmt(*r.mean_numerator_se, "%.3g")
           << ")\n";
    if (r.coverage)
        for (std::size_t i = 0; i < r.coverage->size(); ++i)
            os << "  group " << (i + 1) << " coverage " << fmt((*r.coverage)[i], "%.4f")
               << " (truth " << fmt((*r.truth)[i], "%.4f") << ", mc se "
               << fmt((*r.coverage_se)[i], "%.4f") << ")\n";
}

void emit(std::ostream& os, Format f, const json& envelope_json,
          const std::function<void()>& text_renderer)
{
    if (f == Format::json_fmt) {
        os << envelope_json.dump(2) << "\n";
    } else {
        text_renderer();
    }
}

// ---------------------------------------------------------------------------
// subcommand implementations
// ---------------------------------------------------------------------------

struct CommonOpts {
    std::string format_name;
    Format format() const
    {
        return format_name.empty() ? default_format() : parse_format(format_name);
    }
};

int cmd_ranks(const std::string& file, bool pseudo, Format f, std::ostream& os)
{
    const auto data = read_csv(file);
    const auto a = pseudo ? pseudo_ranks(data) : ranks(data);
    emit(os, f, envelope("ranks", to_json(a, data)), [&] { render_ranks(os, f, a, data); });
    return 0;
}

int cmd_effects(const std::string& file, const std::string& kind, std::optional<double> level,
                bool logit, Format f, std::ostream& os)
{
    if (kind != "weighted" && kind != "unweighted")
        throw UsageError("--kind: expected weighted | unweighted");
    const auto data = read_csv(file);
    const bool weighted = kind == "weighted";
    const auto effects = weighted ? estimate_p(data) : estimate_psi(data);
    std::optional<IntervalReport> intervals;
    if (level) {
        if (!(*level > 0.5 && *level < 1.0))
            throw UsageError("--level: must lie in (0.5, 1)");
        try {
            intervals = weighted ? interval_p(data, *level, logit)
                                 : ci_psi(data, *level, logit);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    json payload{{"effects", to_json(effects)}};
    if (intervals) payload["intervals"] = to_json(*intervals);
    emit(os, f, envelope("effects", payload),
         [&] { render_effects(os, f, effects, data, intervals); });
    return 0;
}

int cmd_test(const std::string& file, const std::string& method, bool pseudo,
             const std::vector<double>& trend, const std::string& contrast_name,
             const std::string& side_name, const std::string& variance_name, bool strict,
             Format f, std::ostream& os)
{
    const auto data = read_csv(file);
    const Ranking ranking = pseudo ? Ranking::pseudo : Ranking::ordinary;

    TestSide side = TestSide::two_sided;
    if (side_name == "increasing") side = TestSide::increasing;
    else if (side_name == "decreasing") side = TestSide::decreasing;
    else if (side_name != "two_sided") throw UsageError("--side: two_sided | increasing | decreasing");

    VarianceModel variance = VarianceModel::influence;
    if (variance_name == "strong-null" || variance_name == "strong_null")
        variance = VarianceModel::strong_null;
    else if (variance_name != "influence")
        throw UsageError("--variance: influence | strong-null");

    auto parse_contrast = [&](std::size_t d) -> std::vector<double> {
        if (contrast_name.empty()) throw UsageError("--contrast required for this method");
        json j;
        if (contrast_name == "A" || contrast_name == "B" || contrast_name == "AB") {
            j = json(contrast_name);
        } else {
            j = json::parse("[" + contrast_name + "]", nullptr, false);
            if (j.is_discarded())
                throw UsageError("--contrast: expected A | B | AB or c1,c2,c3,c4");
        }
        return detail::contrast_from_json(j, d, "--contrast");
    };

    TestReport report;
    try {
        if (method == "kw") {
            report = kruskal_wallis(data, ranking);
        } else if (method == "hn") {
            if (trend.empty()) throw UsageError("--trend required for the trend test");
            report = hn_trend(data, trend, ranking, side);
        } else if (method == "contrast") {
            if (!data.is_two_by_two())
                throw UsageError("--method contrast needs a 2x2 file (header a,b,value)");
            report = contrast_test(data, parse_contrast(4), ranking, variance);
        } else if (method == "anova") {
            if (!data.is_two_by_two())
                throw UsageError("--method anova needs a 2x2 file (header a,b,value)");
            report = anova_2x2(data, parse_contrast(4));
        } else {
            throw UsageError("--method: kw | hn | contrast | anova");
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    emit(os, f, envelope("test", to_json(report)), [&] { render_test(os, f, report); });
    if (report.degenerate && strict) return 4;
    return 0;
}

int cmd_analytic(const std::string& file, bool table1, bool subgroup, Format f, std::ostream& os)
{
    const auto scenario = read_scenario(file);

    if (table1) {
        if (scenario.allocations.empty())
            throw UsageError("--table1 needs an \"allocations\" list in the scenario");
        json rows = json::array();
        std::ostringstream text;
        text << "setting   p                                  c_p        c_hn\n";
        char tag = 'A';
        for (const auto& alloc : scenario.allocations) {
            const auto report =
                noncentralities(scenario.specs, alloc, scenario.trend, scenario.contrast,
                                scenario.n_total);
            rows.push_back(to_json(report));
            std::ostringstream pv;
            for (std::size_t i = 0; i < report.p.size(); ++i)
                pv << (i ? ", " : "") << fmt(report.p[i], "%.4f");
            text << "(" << tag++ << ")       (" << pv.str() << ")"
                 << "          " << fmt(report.c_p, "%.5f");
            if (report.c_hn) {
                text << "    " << fmt(*report.c_hn, "%.5g");
                if (report.exact && report.exact->c_hn)
                    text << " (= " << report.exact->c_hn->to_string() << ")";
            }
            text << "\n";
        }
        emit(os, f, envelope("analytic", json{{"table1", rows}}), [&] {
            if (f == Format::csv) {
                os << "setting,p,c_p,c_hn\n";
                char t2 = 'A';
                for (const auto& r : rows) {
                    os << t2++ << ",\"";
                    const auto& p = r.at("p");
                    for (std::size_t i = 0; i < p.size(); ++i)
                        os << (i ? " " : "") << fmt(p[i].get<double>());
                    os << "\"," << fmt(r.at("c_p").get<double>()) << ",";
                    if (r.contains("c_hn")) os << fmt(r.at("c_hn").get<double>());
                    os << "\n";
                }
            } else {
                os << text.str();
            }
        });
        return 0;
    }

    if (subgroup) {
        if (!scenario.subgroup)
            throw UsageError("--subgroup needs a \"subgroup\" block in the scenario");
        const auto rows = subgroup_table(scenario.specs, scenario.subgroup->fixed,
                                         scenario.subgroup->growing,
                                         scenario.subgroup->contrast);
        emit(os, f, envelope("analytic", json{{"subgroup", to_json(rows)}}),
             [&] { render_subgroup(os, f, rows); });
        return 0;
    }

    if (!scenario.alloc) throw UsageError("scenario needs an \"alloc\" for raw non-centralities");
    const auto report = noncentralities(scenario.specs, *scenario.alloc, scenario.trend,
                                        scenario.contrast, scenario.n_total);
    emit(os, f, envelope("analytic", to_json(report)),
         [&] { render_noncentralities(os, f, report); });
    return 0;
}

int cmd_simulate(const std::string& file, unsigned threads, Format f, std::ostream& os)
{
    const auto plan = read_plan(file);
    const auto result = run(plan, threads);
    emit(os, f, envelope("simulate", to_json(result), plan.seed),
         [&] { render_simulation(os, f, result); });
    return 0;
}

// ---------------------------------------------------------------------------
// fixture replay
// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& os);

/// Replays every fixture in a manifest: each fixture names the CLI argv to
/// run (always with JSON output) and a list of checks against the produced
/// envelope (JSON-pointer paths with exact or toleranced expectations).
int cmd_replay(const std::string& manifest_path, std::ostream& os)
{
    const auto manifest = detail::load_json(manifest_path);
    if (!manifest.contains("fixtures") || !manifest.at("fixtures").is_array())
        throw UsageError("manifest: expected a \"fixtures\" array");

    int failures = 0;
    for (const auto& fixture : manifest.at("fixtures")) {
        const auto name = fixture.at("name").get<std::string>();
        auto args = fixture.at("args").get<std::vector<std::string>>();
        args.push_back("--format");
        args.push_back("json");

        std::ostringstream captured;
        int rc = 0;
        try {
            rc = dispatch(args, captured);
        } catch (const std::exception& e) {
            os << "FAIL " << name << ": command threw: " << e.what() << "\n";
            ++failures;
            continue;
        }
        if (rc != 0) {
            os << "FAIL " << name << ": exit code " << rc << "\n";
            ++failures;
            continue;
        }
        json out;
        try {
            out = json::parse(captured.str());
        } catch (const json::parse_error& e) {
            os << "FAIL " << name << ": output is not JSON: " << e.what() << "\n";
            ++failures;
            continue;
        }

        bool ok = true;
        std::string detail_msg;
        for (const auto& check : fixture.at("checks")) {
            const auto path = check.at("path").get<std::string>();
            json actual;
            try {
                actual = out.at(json::json_pointer(path));
            } catch (const json::exception&) {
                ok = false;
                detail_msg = path + ": missing";
                break;
            }
            if (check.contains("equals")) {
                if (actual != check.at("equals")) {
                    ok = false;
                    detail_msg = path + ": expected " + check.at("equals").dump() + ", got " +
                                 actual.dump();
                    break;
                }
            } else {
                const double expect = check.at("value").get<double>();
                const double tol = check.at("tol").get<double>();
                const double got = actual.get<double>();
                if (!(std::fabs(got - expect) <= tol)) {
                    ok = false;
                    detail_msg = path + ": expected " + fmt(expect) + " +/- " + fmt(tol) +
                                 ", got " + fmt(got);
                    break;
                }
            }
        }
        if (ok) {
            os << "PASS " << name << "\n";
        } else {
            os << "FAIL " << name << ": " << detail_msg << "\n";
            ++failures;
        }
    }
    os << (failures == 0 ? "all fixtures passed\n"
                         : std::to_string(failures) + " fixture(s) failed\n");
    return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& os)
{
    CLI::App app{"rank and pseudo-rank inference toolkit"};
    app.require_subcommand(1);

    std::string file, format_name, kind = "weighted", method, contrast_name;
    std::string side_name = "two_sided", variance_name = "influence";
    std::vector<double> trend;
    bool pseudo = false, logit = false, strict = false, table1 = false, subgroup = false;
    std::optional<double> level;
    unsigned threads = 0;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_name, "output format: text | csv | json");
    };

    auto* ranks_cmd = app.add_subcommand("ranks", "per-observation (pseudo-)ranks");
    ranks_cmd->add_option("file", file, "long-format CSV")->required();
    ranks_cmd->add_flag("--pseudo", pseudo, "pseudo-ranks instead of mid-ranks");
    add_format(ranks_cmd);

    auto* effects_cmd = app.add_subcommand("effects", "relative treatment effects");
    effects_cmd->add_option("file", file, "long-format CSV")->required();
    effects_cmd->add_option("--kind", kind, "weighted | unweighted");
    effects_cmd->add_option("--level", level, "confidence level for intervals, e.g. 0.95");
    effects_cmd->add_flag("--logit", logit, "delta-method limits on the logit scale");
    add_format(effects_cmd);

    auto* test_cmd = app.add_subcommand("test", "rank / pseudo-rank tests");
    test_cmd->add_option("file", file, "long-format CSV")->required();
    test_cmd->add_option("--method", method, "kw | hn | contrast | anova")->required();
    test_cmd->add_flag("--pseudo", pseudo, "pseudo-rank variant");
    test_cmd->add_option("--trend", trend, "trend scores for --method hn")->delimiter(',');
    test_cmd->add_option("--contrast", contrast_name, "A | B | AB or c1,c2,c3,c4");
    test_cmd->add_option("--side", side_name, "two_sided | increasing | decreasing");
    test_cmd->add_option("--variance", variance_name,
                         "contrast studentization: influence | strong-null");
    test_cmd->add_flag("--strict", strict, "exit 4 on a degenerate statistic");
    add_format(test_cmd);

    auto* analytic_cmd = app.add_subcommand("analytic", "population non-centrality oracle");
    analytic_cmd->add_option("file", file, "scenario JSON")->required();
    analytic_cmd->add_flag("--table1", table1, "dice-style table over listed allocations");
    analytic_cmd->add_flag("--subgroup", subgroup, "sub-group trajectory table");
    add_format(analytic_cmd);

    auto* simulate_cmd = app.add_subcommand("simulate", "seeded Monte Carlo runs");
    simulate_cmd->add_option("file", file, "plan JSON")->required();
    simulate_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    add_format(simulate_cmd);

    auto* replay_cmd = app.add_subcommand("replay", "replay golden fixtures from a manifest");
    replay_cmd->add_option("file", file, "manifest JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help();
            return 0;
        }
        throw UsageError(e.what());
    }

    const Format f = format_name.empty() ? default_format() : parse_format(format_name);
    if (ranks_cmd->parsed()) return cmd_ranks(file, pseudo, f, os);
    if (effects_cmd->parsed()) return cmd_effects(file, kind, level, logit, f, os);
    if (test_cmd->parsed())
        return cmd_test(file, method, pseudo, trend, contrast_name, side_name, variance_name,
                        strict, f, os);
    if (analytic_cmd->parsed()) return cmd_analytic(file, table1, subgroup, f, os);
    if (simulate_cmd->parsed()) return cmd_simulate(file, threads, f, os);
    if (replay_cmd->parsed()) return cmd_replay(file, os);
    throw UsageError("no subcommand given");
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(args, std::cout);
    } catch (const pseudorank::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pseudorank::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
