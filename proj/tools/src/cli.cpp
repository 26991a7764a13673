#include "volspill/cli.hpp"

#include "volspill/csv.hpp"
#include "volspill/error.hpp"
#include "volspill/event.hpp"
#include "volspill/report.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace volspill::cli {
namespace {

struct Options {
    std::string input;
    std::vector<std::string> markets;
    double scale = 1.0;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 0;

    std::vector<std::string> families;
    bool families_given = false;
    int max_var_lag = 6;
    int horizon = 1;
    bool log_variance = true;

    std::string event_date;
    std::string pre;
    std::string post;
    bool equal_windows = false;
    bool plots = false;
    unsigned workers = 0;
};

PricePanel load_panel(const Options& o) {
    if (o.input.empty()) throw InputError("--input is required");
    PricePanel panel = read_price_csv(std::filesystem::path(o.input));
    if (!o.markets.empty()) panel = panel.select(o.markets);
    panel.validate();
    return panel;
}

std::vector<GarchSpec> candidates(const Options& o) {
    if (!o.families_given) {
        std::vector<GarchSpec> all;
        for (Family f : all_families()) all.push_back({f, 1, 1});
        return all;
    }
    std::vector<GarchSpec> out;
    for (const auto& name : o.families) {
        if (name.empty()) continue;
        const auto f = parse_family(name);
        if (!f) throw InputError(fmt::format("unknown model family '{}'", name));
        GarchSpec spec{*f, 1, 1};
        if (std::find(out.begin(), out.end(), spec) == out.end()) out.push_back(spec);
    }
    if (out.empty()) throw InputError("--families lists no candidate models");
    return out;
}

VolatilityTransform transform(const Options& o) {
    return o.log_variance ? VolatilityTransform::Log : VolatilityTransform::Raw;
}

/// Writes to --out when given, otherwise to the command's stdout.
void emit(const Options& o, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (o.out.empty()) {
        body(out);
        return;
    }
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError(fmt::format("cannot write '{}'", o.out));
    body(file);
}

std::pair<Date, Date> parse_range(const std::string& text, const char* flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw InputError(fmt::format("{} expects START:END, got '{}'", flag, text));
    }
    return {parse_date(text.substr(0, colon)), parse_date(text.substr(colon + 1))};
}

EventWindowConfig window_config(const Options& o, const PricePanel& panel) {
    if (o.event_date.empty()) throw InputError("--event-date is required");
    EventWindowConfig cfg;
    cfg.event_date = parse_date(o.event_date);
    cfg.require_equal_length = o.equal_windows;
    // Defaults span the whole sample on either side of the event.
    cfg.pre_start = panel.dates.front();
    cfg.pre_end = add_days(cfg.event_date, -1);
    cfg.post_start = add_days(cfg.event_date, 1);
    cfg.post_end = panel.dates.back();
    if (!o.pre.empty()) std::tie(cfg.pre_start, cfg.pre_end) = parse_range(o.pre, "--pre");
    if (!o.post.empty()) std::tie(cfg.post_start, cfg.post_end) = parse_range(o.post, "--post");
    cfg.validate();
    return cfg;
}

int cmd_describe(const Options& o, std::ostream& out) {
    const auto panel = load_panel(o);
    const auto returns = log_returns(panel, o.scale);
    std::vector<DescriptiveStats> stats;
    for (const auto& r : returns) stats.push_back(describe(r));
    emit(o, out, [&](std::ostream& s) {
        if (o.format == "json") {
            s << stats_to_json(panel.markets, stats) << '\n';
        } else {
            write_stats_csv(s, panel.markets, stats);
        }
    });
    return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
    const auto cands = candidates(o);
    const auto panel = load_panel(o);
    const auto returns = log_returns(panel, o.scale);
    std::vector<std::optional<GarchFit>> fits(returns.size());
    int status = kExitOk;
    for (std::size_t m = 0; m < returns.size(); ++m) {
        try {
            fits[m] = select_model(cands, returns[m].values);
        } catch (const NumericalError& e) {
            err << fmt::format("{}: {}\n", panel.markets[m], e.what());
            status = kExitNumerical;
        }
    }
    std::vector<const GarchFit*> ptrs;
    for (const auto& f : fits) ptrs.push_back(f ? &*f : nullptr);
    emit(o, out, [&](std::ostream& s) {
        if (o.format == "json") {
            s << fits_to_json(panel.markets, ptrs) << '\n';
        } else {
            write_fits_csv(s, panel.markets, ptrs);
        }
    });
    return status;
}

int cmd_spillover(const Options& o, std::ostream& out) {
    const auto cands = candidates(o);
    const auto panel = load_panel(o);
    if (panel.markets.size() < 2) {
        throw InputError(fmt::format("spillover needs at least 2 markets, got {}", panel.markets.size()));
    }
    const auto returns = log_returns(panel, o.scale);
    std::vector<std::vector<double>> variances;
    for (std::size_t m = 0; m < returns.size(); ++m) {
        try {
            variances.push_back(select_model(cands, returns[m].values).cond_variance);
        } catch (const NumericalError& e) {
            throw NumericalError(fmt::format("{}: {}", panel.markets[m], e.what()));
        }
    }
    std::vector<Date> dates(returns.front().dates.begin() + 1, returns.front().dates.end());
    const auto vol = VolatilityPanel::from_variances(panel.markets, std::move(dates), variances, transform(o));
    SpilloverConfig cfg;
    cfg.max_lag = o.max_var_lag;
    cfg.horizon = o.horizon;
    cfg.transform = transform(o);
    const auto table = spillover_table(vol, cfg);
    emit(o, out, [&](std::ostream& s) {
        if (o.format == "json") {
            s << spillover_to_json(table) << '\n';
        } else {
            write_spillover_csv(s, table, true);
        }
    });
    return kExitOk;
}

int cmd_event(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.out.empty()) throw InputError("event needs --out <directory>");
    EventOptions opts;
    opts.candidates = candidates(o);
    const auto panel = load_panel(o);
    const auto cfg = window_config(o, panel);
    opts.var.max_lag = o.max_var_lag;
    opts.var.horizon = o.horizon;
    opts.var.transform = transform(o);
    opts.scale = o.scale;
    opts.workers = o.workers;

    const auto report = run_event_analysis(panel, cfg, opts);
    write_event_report(o.out, report, o.plots);

    for (const auto& f : report.failures) {
        err << fmt::format("warning: {} excluded ({})\n", f.market, f.reasons);
    }
    if (o.format == "json") {
        out << report_to_json(report) << '\n';
    } else {
        std::ifstream deltas(std::filesystem::path(o.out) / "deltas.csv", std::ios::binary);
        out << deltas.rdbuf();
    }
    return kExitOk;
}

void add_common(CLI::App& app, Options& o) {
    app.add_option("--input,-i", o.input, "CSV of prices: date,<market>,...");
    app.add_option("--markets", o.markets, "Comma-separated market columns to keep")->delimiter(',');
    app.add_option("--scale", o.scale, "Multiplier applied to log returns")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out,-o", o.out, "Output file (event: output directory)");
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", o.seed,
                   "Seed for randomized steps; estimation itself is deterministic")
        ->capture_default_str();
}

void add_model(CLI::App& app, Options& o) {
    app.add_option("--families", o.families, "Comma-separated candidate families (default: all nine)")
        ->delimiter(',');
    app.add_option("--max-var-lag", o.max_var_lag, "Largest VAR lag tried by AIC")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--horizon", o.horizon, "Forecast horizon H of the variance decomposition")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--log-variance,!--raw-variance", o.log_variance,
                 "Run the VAR on log conditional variance (default) or on the raw variance");
}

void add_event(CLI::App& app, Options& o) {
    app.add_option("--event-date", o.event_date, "Event date YYYY-MM-DD, excluded from both windows");
    app.add_option("--pre", o.pre, "Pre-event window START:END (default: sample start to the eve)");
    app.add_option("--post", o.post, "Post-event window START:END (default: day after to sample end)");
    app.add_flag("--equal-windows", o.equal_windows, "Require equal observation counts in both windows");
    app.add_flag("--plots", o.plots, "Also write SVG plots under <out>/plots");
    app.add_option("--workers", o.workers, "Concurrent fits (0 = hardware concurrency)")
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"GARCH-family volatility fitting and spillover event analysis", "volspill"};
    app.set_config("--config", "", "TOML/INI file of option defaults; flags override it");
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);

    auto* describe_cmd = app.add_subcommand("describe", "Descriptive statistics of log returns");
    auto* fit_cmd = app.add_subcommand("fit", "Fit candidate models per market and select by AIC");
    auto* spill_cmd = app.add_subcommand("spillover", "Volatility spillover table over all markets");
    auto* event_cmd = app.add_subcommand("event", "Pre/post event comparison written to a directory");
    for (auto* sub : {describe_cmd, fit_cmd, spill_cmd, event_cmd}) add_common(*sub, o);
    for (auto* sub : {fit_cmd, spill_cmd, event_cmd}) add_model(*sub, o);
    add_event(*event_cmd, o);

    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (auto* sub : {fit_cmd, spill_cmd, event_cmd}) {
        if (sub->parsed()) o.families_given = sub->count("--families") > 0;
    }
    try {
        if (describe_cmd->parsed()) return cmd_describe(o, out);
        if (fit_cmd->parsed()) return cmd_fit(o, out, err);
        if (spill_cmd->parsed()) return cmd_spillover(o, out);
        return cmd_event(o, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace volspill::cli
