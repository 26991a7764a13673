#include "support.hpp"

#include "volspill/error.hpp"
#include "volspill/event.hpp"
#include "volspill/garch.hpp"

#include <doctest.h>

#include <algorithm>

using namespace volspill;
using namespace testsupport;

namespace {

EventOptions garch_only() {
    EventOptions o;
    o.candidates = {{Family::GARCH, 1, 1}};
    o.scale = 100.0;
    o.workers = 1;
    return o;
}

EventWindowConfig windows_around(const PricePanel& panel, Date event) {
    return {event, panel.dates.front(), add_days(event, -1), add_days(event, 1), panel.dates.back(), false};
}

/// Post-window prices repeat the pre-window prices, so both windows produce
/// bit-identical returns.
PricePanel mirrored_panel(std::size_t per_window) {
    std::vector<std::vector<double>> returns;
    for (std::uint64_t m = 0; m < 3; ++m) {
        GarchParams p = GarchParams::zeros({Family::GARCH, 1, 1});
        p.omega = 0.1;
        p.alpha[0] = 0.1 + 0.02 * static_cast<double>(m);
        p.beta[0] = 0.8;
        returns.push_back(simulate({Family::GARCH, 1, 1}, p, per_window, 10 + m).values);
    }
    PricePanel pre = panel_from_returns({"A", "B", "C"}, returns, parse_date("2018-01-01"));
    PricePanel out = pre;
    for (std::size_t t = 0; t <= per_window; ++t) {
        out.dates.push_back(add_days(pre.dates.back(), static_cast<int>(t + 1)));
        for (std::size_t m = 0; m < 3; ++m) out.prices[m].push_back(pre.prices[m][t]);
    }
    return out;
}

}  // namespace

TEST_CASE("identical windows give zero deltas") {
    const std::size_t w = 400;
    const auto panel = mirrored_panel(w);
    const Date event = panel.dates[w + 1];
    const auto report = run_event_analysis(panel, windows_around(panel, event), garch_only());
    REQUIRE(report.pre.dates.size() == w);
    REQUIRE(report.post.dates.size() == w);
    CHECK(report.failures.empty());
    CHECK(report.deltas.markets == std::vector<std::string>{"A", "B", "C"});
    for (double d : report.deltas.persistence) CHECK(d == 0.0);
    for (double d : report.deltas.net) CHECK(d == 0.0);
    CHECK(report.deltas.total_index == 0.0);
}

TEST_CASE("event analysis on a regime shift") {
    const auto rs = regime_shift_panel(3, 500);
    const auto cfg = windows_around(rs.panel, rs.event);
    auto opts = garch_only();
    const auto report = run_event_analysis(rs.panel, cfg, opts);

    SUBCASE("window shape") {
        CHECK(report.pre.dates.size() == 500);
        CHECK(report.post.dates.size() == 500);
        CHECK(report.pre.dates.back() < rs.event);
        CHECK(report.post.dates.front() > rs.event);
        CHECK(report.families == std::vector<std::string>{"GARCH"});
        CHECK(report.retained_markets() == rs.panel.markets);
        for (const auto& f : report.pre.fits) CHECK(f->cond_variance.size() == 499);
    }
    SUBCASE("deltas are recomputable from the window results") {
        for (std::size_t i = 0; i < report.deltas.markets.size(); ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            CHECK(std::abs(report.deltas.persistence[i] -
                           (report.post.fits[i]->persistence - report.pre.fits[i]->persistence)) < 1e-12);
            CHECK(std::abs(report.deltas.net[i] - (report.post.spillover.net[k] - report.pre.spillover.net[k])) <
                  1e-12);
        }
        CHECK(std::abs(report.deltas.total_index -
                       (report.post.spillover.total_index - report.pre.spillover.total_index)) < 1e-12);
        const auto again = compute_deltas(report.markets, report.pre, report.post, report.retained_markets());
        CHECK(again.persistence == report.deltas.persistence);
        CHECK(again.net == report.deltas.net);
        CHECK_THROWS_AS(compute_deltas(report.markets, report.pre, report.post, {"nope"}), InputError);
    }
    SUBCASE("results do not depend on the worker count") {
        opts.workers = 3;
        const auto parallel = run_event_analysis(rs.panel, cfg, opts);
        CHECK(parallel.deltas.persistence == report.deltas.persistence);
        CHECK(parallel.deltas.net == report.deltas.net);
        CHECK(parallel.deltas.total_index == report.deltas.total_index);
        for (std::size_t m = 0; m < report.markets.size(); ++m) {
            CHECK(parallel.pre.fits[m]->param_values == report.pre.fits[m]->param_values);
        }
    }
}

TEST_CASE("markets without a converged model are dropped from the spillover tables") {
    auto rs = regime_shift_panel(5, 300);
    // M2 never moves; M4 freezes after the event only.
    std::fill(rs.panel.prices[1].begin(), rs.panel.prices[1].end(), 50.0);
    auto& m4 = rs.panel.prices[3];
    std::fill(m4.begin() + static_cast<std::ptrdiff_t>(rs.per_window + 1), m4.end(), m4[rs.per_window + 1]);
    const auto report = run_event_analysis(rs.panel, windows_around(rs.panel, rs.event), garch_only());

    REQUIRE(report.failures.size() == 2);
    CHECK(report.failures[0].market == "M2");
    CHECK(report.failures[0].windows == std::vector<std::string>{"pre", "post"});
    CHECK(report.failures[1].market == "M4");
    CHECK(report.failures[1].windows == std::vector<std::string>{"post"});
    CHECK(report.failures[0].reasons.find("zero variance") != std::string::npos);

    const std::vector<std::string> retained{"M1", "M3", "M5"};
    CHECK(report.retained_markets() == retained);
    CHECK(report.pre.spillover.markets == retained);
    CHECK(report.post.spillover.markets == retained);
    CHECK(report.deltas.markets == retained);
    CHECK_FALSE(report.pre.fits[1].has_value());
    // Retained and failed markets partition the input.
    CHECK(report.retained_markets().size() + report.failures.size() == report.markets.size());
}

TEST_CASE("event analysis errors") {
    const auto rs = regime_shift_panel(1, 300);
    const auto cfg = windows_around(rs.panel, rs.event);

    CHECK_THROWS_AS(run_event_analysis(rs.panel.select({"M1"}), cfg, garch_only()), InputError);

    auto none = garch_only();
    none.candidates.clear();
    CHECK_THROWS_AS(run_event_analysis(rs.panel, cfg, none), InputError);

    auto one_left = rs.panel;
    for (std::size_t m = 1; m < one_left.prices.size(); ++m)
        std::fill(one_left.prices[m].begin(), one_left.prices[m].end(), 10.0);
    CHECK_THROWS_AS(run_event_analysis(one_left, cfg, garch_only()), NumericalError);

    // Enough data for the variance models, too little for a long VAR.
    const auto shorter = regime_shift_panel(2, 60);
    auto long_var = garch_only();
    long_var.var.max_lag = 10;
    try {
        run_event_analysis(shorter.panel, windows_around(shorter.panel, shorter.event), long_var);
        FAIL("expected a short-window error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("pre window") != std::string::npos);
    }

    auto equal = cfg;
    equal.require_equal_length = true;
    equal.post_end = add_days(equal.post_end, -5);
    CHECK_THROWS_AS(run_event_analysis(rs.panel, equal, garch_only()), InputError);
}
