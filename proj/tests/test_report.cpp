#include "support.hpp"

#include "volspill/error.hpp"
#include "volspill/event.hpp"
#include "volspill/garch.hpp"
#include "volspill/report.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace volspill;
using namespace testsupport;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> cells_of(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

GarchFit tgarch_fit() {
    GarchParams p = GarchParams::zeros({Family::TGARCH, 1, 1});
    p.omega = 0.1;
    p.alpha[0] = 0.05;
    p.gamma[0] = 0.2;
    p.beta[0] = 0.8;
    p.constant = 0.01;
    return fit({Family::TGARCH, 1, 1}, simulate({Family::TGARCH, 1, 1}, p, 1500, 4).values);
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.5) == "1.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333");
    CHECK(format_number(1.0 / 3.0, 3) == "0.333");
    CHECK(format_number(57391.57, 7) == "57391.57");
    CHECK(format_number(NAN) == "NA");
    CHECK(format_number(INFINITY) == "Inf");
    CHECK(format_number(-INFINITY) == "-Inf");
}

TEST_CASE("fit JSON round trip") {
    const auto f = tgarch_fit();
    const auto back = fit_from_json(fit_to_json(f));
    CHECK(back.spec == f.spec);
    CHECK(back.param_names == f.param_names);
    CHECK(back.param_values == f.param_values);
    CHECK(back.params.alpha == f.params.alpha);
    CHECK(back.params.gamma == f.params.gamma);
    CHECK(back.params.beta == f.params.beta);
    CHECK(back.params.omega == f.params.omega);
    CHECK(back.log_likelihood == f.log_likelihood);
    CHECK(back.aic == f.aic);
    CHECK(back.converged == f.converged);
    // Derived metrics survive unchanged and still match their definitions.
    CHECK(back.persistence == f.persistence);
    CHECK(back.asymmetry_degree == f.asymmetry_degree);
    CHECK(back.leverage == f.leverage);
    CHECK(persistence(back.spec, back.params) == back.persistence);
    // The variance path is not serialized, so its length is not restored.
    auto lhs = nlohmann::json::parse(fit_to_json(back));
    auto rhs = nlohmann::json::parse(fit_to_json(f));
    lhs.erase("observations");
    rhs.erase("observations");
    CHECK(lhs == rhs);

    CHECK_THROWS_AS(fit_from_json("{not json"), InputError);
    CHECK_THROWS_AS(fit_from_json(R"({"family": "ARMA", "p": 1, "q": 1})"), InputError);
}

TEST_CASE("statistics table layout") {
    ReturnSeries a{"Qatar", {}, {1, 2, 3, 4, 10}};
    ReturnSeries b{"Saudi, A", {}, {-1, 0, 1, 2, 2}};
    std::ostringstream out;
    write_stats_csv(out, {a.market, b.market}, {describe(a), describe(b)});
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "statistic,Qatar,\"Saudi, A\"");
    const char* labels[] = {"Mean", "Median", "Maximum", "Minimum", "Std. Dev.", "Skewness",
                            "Kurtosis", "Jarque-Bera", "Probability", "Observations"};
    for (std::size_t i = 0; i < 10; ++i) CHECK(lines[i + 1].rfind(std::string(labels[i]) + ",", 0) == 0);
    CHECK(lines[1] == "Mean,4,0.8");
    CHECK(lines[10] == "Observations,5,5");

    const auto j = nlohmann::json::parse(stats_to_json({a.market}, {describe(a)}));
    CHECK(j.at("Qatar").at("mean").get<double>() == 4.0);
    CHECK(j.at("Qatar").at("n").get<int>() == 5);
}

TEST_CASE("spillover table layout") {
    Eigen::MatrixXd m(2, 2);
    m << 80, 20, 40, 60;
    const auto t = aggregate_spillovers({"A", "B"}, m, 10, 1);
    SUBCASE("plain") {
        std::ostringstream out;
        write_spillover_csv(out, t);
        const auto lines = lines_of(out.str());
        REQUIRE(lines.size() == 5);
        CHECK(lines[0] == ",A,B,Contribution from others");
        CHECK(lines[1] == "A,80,20,20");
        CHECK(lines[2] == "B,40,60,40");
        CHECK(lines[3] == "Contribution to others,40,20,30");
        CHECK(lines[4] == "Contribution including own,120,80,");
    }
    SUBCASE("with per-market shares") {
        std::ostringstream out;
        write_spillover_csv(out, t, true);
        const auto lines = lines_of(out.str());
        REQUIRE(lines.size() == 6);
        CHECK(lines[0] == ",A,B,Contribution from others,From others / N");
        CHECK(lines[1] == "A,80,20,20,10");
        CHECK(lines[5] == "To others / N,20,10,,");
        for (const auto& line : lines) CHECK(cells_of(line).size() == 5);
    }
    SUBCASE("net") {
        std::ostringstream out;
        write_net_csv(out, t);
        CHECK(out.str() == "market,from_others,to_others,net\nA,20,40,20\nB,40,20,-20\n");
    }
    SUBCASE("json") {
        const auto j = nlohmann::json::parse(spillover_to_json(t));
        CHECK(j.dump().find("30") != std::string::npos);
    }
}

TEST_CASE("estimation table layout") {
    const auto f = tgarch_fit();
    std::ostringstream out;
    write_fits_csv(out, {"X", "Y"}, {&f, nullptr});
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 3);
    const auto header = cells_of(lines[0]);
    CHECK(header.size() == 20);
    CHECK(header[1] == "family");
    CHECK(header[12] == "gamma");
    CHECK(cells_of(lines[1]).size() == header.size());
    CHECK(cells_of(lines[1])[1] == "TGARCH");
    CHECK(cells_of(lines[2]).size() == header.size());
    CHECK(cells_of(lines[2])[1] == "FAILED");
    CHECK(std::stod(cells_of(lines[1])[14]) == doctest::Approx(f.persistence).epsilon(1e-9));
}

TEST_CASE("event report files") {
    const auto rs = regime_shift_panel(9, 300);
    const EventWindowConfig cfg{rs.event, rs.panel.dates.front(), add_days(rs.event, -1), add_days(rs.event, 1),
                                rs.panel.dates.back(), true};
    EventOptions opts;
    opts.candidates = {{Family::GARCH, 1, 1}, {Family::TGARCH, 1, 1}};
    opts.scale = 100.0;
    opts.workers = 1;
    const auto report = run_event_analysis(rs.panel, cfg, opts);

    TempDir plain("report_plain"), plotted("report_plots");
    write_event_report(plain.path(), report, false);
    write_event_report(plotted.path(), report, true);

    std::vector<std::string> names;
    for (const auto& [name, body] : directory_snapshot(plain.path())) names.push_back(name);
    const std::vector<std::string> expected{"deltas.csv",        "fits_post.json", "fits_pre.json",
                                            "net_post.csv",      "net_pre.csv",    "report.json",
                                            "spillover_post.csv", "spillover_pre.csv", "stats_post.csv",
                                            "stats_pre.csv"};
    CHECK(names == expected);

    std::size_t svg = 0;
    for (const auto& [name, body] : directory_snapshot(plotted.path())) {
        if (name.starts_with("plots/")) {
            ++svg;
            CHECK(body.rfind("<svg", 0) == 0);
        }
    }
    // One variance chart per market and window plus one net chart per window.
    CHECK(svg == 2 * rs.panel.markets.size() + 2);

    const auto deltas = lines_of(slurp(plain / "deltas.csv"));
    REQUIRE(deltas.size() == 7);
    CHECK(deltas.back().rfind("TOTAL_INDEX,", 0) == 0);

    const auto j = nlohmann::json::parse(slurp(plain / "report.json"));
    CHECK(j.at("markets").size() == 5);
    CHECK(j.at("config").at("event_date").get<std::string>() == format_date(rs.event));
    CHECK(j.at("deltas").at("total_index").get<double>() == report.deltas.total_index);

    // Writing is deterministic.
    TempDir again("report_again");
    write_event_report(again.path(), report, true);
    CHECK(directory_snapshot(again.path()) == directory_snapshot(plotted.path()));
}
