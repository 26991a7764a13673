#include "support.hpp"

#include "volspill/cli.hpp"
#include "volspill/garch.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace volspill;
using namespace testsupport;

namespace {

/// Three correlated GARCH markets, 1001 returns each, written as a price CSV.
struct Fixture {
    TempDir dir{"cli"};
    std::string prices;
    std::string event;

    Fixture() {
        const auto rs = regime_shift_panel(5, 500);
        prices = (dir / "prices.csv").string();
        write_panel(prices, rs.panel.select({"M1", "M2", "M3"}));
        event = format_date(rs.event);
    }
};

}  // namespace

TEST_CASE("usage and help") {
    CHECK(run_cli({"--help"}).code == cli::kExitOk);
    CHECK(run_cli({"describe", "--help"}).code == cli::kExitOk);
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"bogus"}).code == cli::kExitUsage);
    CHECK(run_cli({"describe", "--no-such-flag"}).code == cli::kExitUsage);
    CHECK(run_cli({"describe"}).code == cli::kExitUsage);
}

TEST_CASE("input errors exit with 2") {
    Fixture fx;
    SUBCASE("missing file") {
        const auto r = run_cli({"describe", "--input", (fx.dir / "absent.csv").string()});
        CHECK(r.code == cli::kExitUsage);
        CHECK(r.err.find("absent.csv") != std::string::npos);
    }
    SUBCASE("negative price names file and line") {
        const auto bad = fx.dir / "neg.csv";
        write_text(bad, "date,A,B\n2020-01-01,1,2\n2020-01-02,-1,2\n2020-01-03,1,2\n");
        const auto r = run_cli({"describe", "--input", bad.string()});
        CHECK(r.code == cli::kExitUsage);
        CHECK(r.err.find("neg.csv") != std::string::npos);
        CHECK(r.err.find("3") != std::string::npos);
    }
    SUBCASE("unknown market") {
        CHECK(run_cli({"describe", "--input", fx.prices, "--markets", "M1,ZZ"}).code == cli::kExitUsage);
    }
    SUBCASE("bad families") {
        CHECK(run_cli({"fit", "--input", fx.prices, "--families", ""}).code == cli::kExitUsage);
        const auto r = run_cli({"fit", "--input", fx.prices, "--families", "GARCH,ARMA"});
        CHECK(r.code == cli::kExitUsage);
        CHECK(r.err.find("ARMA") != std::string::npos);
    }
    SUBCASE("bad numbers and formats") {
        CHECK(run_cli({"describe", "--input", fx.prices, "--scale", "0"}).code == cli::kExitUsage);
        CHECK(run_cli({"describe", "--input", fx.prices, "--format", "xml"}).code == cli::kExitUsage);
        CHECK(run_cli({"spillover", "--input", fx.prices, "--horizon", "0"}).code == cli::kExitUsage);
    }
    SUBCASE("spillover with one market") {
        CHECK(run_cli({"spillover", "--input", fx.prices, "--markets", "M1", "--families", "GARCH"}).code ==
              cli::kExitUsage);
    }
    SUBCASE("event argument errors") {
        const std::string out = (fx.dir / "ev").string();
        CHECK(run_cli({"event", "--input", fx.prices, "--event-date", fx.event}).code == cli::kExitUsage);
        CHECK(run_cli({"event", "--input", fx.prices, "--out", out}).code == cli::kExitUsage);
        CHECK(run_cli({"event", "--input", fx.prices, "--out", out, "--event-date", "2016-13-01"}).code ==
              cli::kExitUsage);
        CHECK(run_cli({"event", "--input", fx.prices, "--out", out, "--event-date", fx.event, "--pre",
                       "2015-01-01"})
                  .code == cli::kExitUsage);
        const auto r = run_cli({"event", "--input", fx.prices, "--out", out, "--event-date", fx.event,
                                "--families", "GARCH", "--equal-windows", "--post",
                                fx.event.substr(0, 4) + "-12-31:2099-01-01"});
        CHECK(r.code == cli::kExitUsage);
    }
}

TEST_CASE("numerical failures exit with 3") {
    TempDir dir("cli_flat");
    std::string csv = "date,A\n";
    for (int d = 0; d < 200; ++d) csv += format_date(add_days(parse_date("2020-01-01"), d)) + ",5\n";
    write_text(dir / "flat.csv", csv);
    const auto r = run_cli({"fit", "--input", (dir / "flat.csv").string(), "--families", "GARCH"});
    CHECK(r.code == cli::kExitNumerical);
    CHECK(r.err.find("A:") != std::string::npos);
    CHECK(r.out.find("FAILED") != std::string::npos);
}

TEST_CASE("describe, fit and spillover outputs") {
    Fixture fx;
    SUBCASE("describe csv and json") {
        const auto csv = run_cli({"describe", "--input", fx.prices, "--scale", "100"});
        CHECK(csv.code == 0);
        CHECK(csv.out.rfind("statistic,M1,M2,M3\n", 0) == 0);
        const auto js = run_cli({"describe", "--input", fx.prices, "--format", "json"});
        CHECK(js.code == 0);
        CHECK(nlohmann::json::parse(js.out).contains("M2"));
    }
    SUBCASE("fit to a file") {
        const auto path = fx.dir / "fits.csv";
        const auto r = run_cli({"fit", "--input", fx.prices, "--families", "GARCH,TGARCH", "--out", path.string()});
        CHECK(r.code == 0);
        CHECK(r.out.empty());
        const auto body = slurp(path);
        CHECK(body.find("M1,") != std::string::npos);
        CHECK(body.find("FAILED") == std::string::npos);
    }
    SUBCASE("spillover table") {
        const auto r = run_cli({"spillover", "--input", fx.prices, "--scale", "100", "--families", "GARCH",
                                "--horizon", "10", "--max-var-lag", "3"});
        CHECK(r.code == 0);
        CHECK(r.out.rfind(",M1,M2,M3,Contribution from others,From others / N\n", 0) == 0);
        const auto raw = run_cli({"spillover", "--input", fx.prices, "--scale", "100", "--families", "GARCH",
                                  "--horizon", "10", "--max-var-lag", "3", "--raw-variance"});
        CHECK(raw.code == 0);
        CHECK(raw.out != r.out);
        const auto js = run_cli({"spillover", "--input", fx.prices, "--scale", "100", "--families", "GARCH",
                                 "--format", "json"});
        CHECK(js.code == 0);
        CHECK(nlohmann::json::parse(js.out).is_object());
    }
}

TEST_CASE("config file defaults and flag precedence") {
    Fixture fx;
    const auto cfg = fx.dir / "run.toml";
    write_text(cfg, "[describe]\nscale = 100\nformat = \"json\"\ninput = \"" + fx.prices + "\"\n");
    const auto from_file = run_cli({"describe", "--config", cfg.string()});
    CHECK(from_file.code == 0);
    const auto j = nlohmann::json::parse(from_file.out);
    const auto direct = nlohmann::json::parse(
        run_cli({"describe", "--input", fx.prices, "--scale", "100", "--format", "json"}).out);
    CHECK(j == direct);

    // A flag wins over the file.
    const auto overridden = run_cli({"describe", "--config", cfg.string(), "--format", "csv"});
    CHECK(overridden.code == 0);
    CHECK(overridden.out.rfind("statistic,", 0) == 0);

    // Families set in the file are honoured.
    const auto fit_cfg = fx.dir / "fit.toml";
    write_text(fit_cfg, "[fit]\nfamilies = [\"IGARCH\"]\n");
    const auto fit = run_cli({"fit", "--config", fit_cfg.string(), "--input", fx.prices, "--markets", "M1"});
    CHECK(fit.code == 0);
    CHECK(fit.out.find("M1,IGARCH,") != std::string::npos);

    // Unknown keys and keys outside a command section are errors.
    const auto stray = fx.dir / "stray.toml";
    write_text(stray, "scale = 100\n");
    CHECK(run_cli({"describe", "--config", stray.string(), "--input", fx.prices}).code == cli::kExitUsage);
    CHECK(run_cli({"describe", "--config", (fx.dir / "missing.toml").string()}).code == cli::kExitUsage);
}

TEST_CASE("event command") {
    Fixture fx;
    const auto a = fx.dir / "run_a";
    const auto b = fx.dir / "run_b";
    const auto c = fx.dir / "run_c";
    const std::vector<std::string> base{"event",      "--input", fx.prices, "--event-date", fx.event,
                                        "--families", "GARCH,TGARCH", "--scale", "100", "--horizon", "10"};
    auto with = [&](const std::filesystem::path& out, std::vector<std::string> extra) {
        auto args = base;
        args.push_back("--out");
        args.push_back(out.string());
        args.insert(args.end(), extra.begin(), extra.end());
        return run_cli(args);
    };
    const auto ra = with(a, {"--plots", "--workers", "1"});
    REQUIRE(ra.code == 0);
    CHECK(ra.out == slurp(a / "deltas.csv"));
    CHECK(std::filesystem::exists(a / "plots"));

    const auto rb = with(b, {"--plots", "--workers", "3", "--seed", "77"});
    REQUIRE(rb.code == 0);
    CHECK(directory_snapshot(a) == directory_snapshot(b));

    const auto rc = with(c, {"--format", "json"});
    REQUIRE(rc.code == 0);
    CHECK_FALSE(std::filesystem::exists(c / "plots"));
    CHECK(nlohmann::json::parse(rc.out).contains("deltas"));
    for (const auto& [name, body] : directory_snapshot(c)) CHECK_FALSE(name.ends_with(".svg"));
}

TEST_CASE("event command reports dropped markets") {
    TempDir dir("cli_drop");
    auto rs = regime_shift_panel(5, 500);
    std::fill(rs.panel.prices[2].begin(), rs.panel.prices[2].end(), 7.0);
    write_panel(dir / "p.csv", rs.panel);
    const auto r = run_cli({"event", "--input", (dir / "p.csv").string(), "--out", (dir / "o").string(),
                            "--event-date", format_date(rs.event), "--families", "GARCH", "--scale", "100"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning: M3 excluded") != std::string::npos);
    CHECK(r.out.find("M3,") == std::string::npos);
}
