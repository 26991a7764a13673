#pragma once

#include "volspill/cli.hpp"
#include "volspill/csv.hpp"
#include "volspill/data.hpp"
#include "volspill/date.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace testsupport {

namespace fs = std::filesystem;

/// Prices 100 * exp(cumsum(r / scale)) on consecutive calendar days.
inline volspill::PricePanel panel_from_returns(const std::vector<std::string>& markets,
                                               const std::vector<std::vector<double>>& returns,
                                               volspill::Date start, double scale = 100.0) {
    volspill::PricePanel panel;
    panel.markets = markets;
    const std::size_t n = returns.front().size();
    for (std::size_t t = 0; t <= n; ++t) panel.dates.push_back(volspill::add_days(start, static_cast<int>(t)));
    for (const auto& r : returns) {
        std::vector<double> p{100.0};
        for (double x : r) p.push_back(p.back() * std::exp(x / scale));
        panel.prices.push_back(std::move(p));
    }
    return panel;
}

struct RegimeShift {
    volspill::PricePanel panel;
    volspill::Date event;
    std::size_t per_window = 0;
};

/// Five GARCH(1,1) markets in percent returns. After the event each market's
/// beta rises by 0.1 and the common-factor loading of the shocks rises, so
/// persistence and cross-market volatility linkage both increase. The event
/// day carries a return of its own that belongs to neither window.
inline RegimeShift regime_shift_panel(std::uint64_t seed, std::size_t per_window = 1000) {
    constexpr int kMarkets = 5;
    const double alpha[kMarkets] = {0.08, 0.10, 0.12, 0.06, 0.09};
    const double beta_pre[kMarkets] = {0.77, 0.75, 0.73, 0.79, 0.76};
    constexpr double kShift = 0.1;
    constexpr double kCommonPre = 0.2;
    constexpr double kCommonPost = 0.5;

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = 2 * per_window + 1;
    std::vector<std::vector<double>> returns(kMarkets, std::vector<double>(n));
    std::vector<double> h(kMarkets), e2(kMarkets);
    for (int m = 0; m < kMarkets; ++m) {
        h[m] = 1.0;
        e2[m] = 1.0;
    }
    for (std::size_t t = 0; t < n; ++t) {
        const bool post = t > per_window;
        const double c = post ? kCommonPost : kCommonPre;
        const double f = normal(gen);
        for (int m = 0; m < kMarkets; ++m) {
            const double beta = beta_pre[m] + (post ? kShift : 0.0);
            const double omega = 1.0 - alpha[m] - beta;  // unit unconditional variance
            h[m] = omega + alpha[m] * e2[m] + beta * h[m];
            const double z = std::sqrt(c) * f + std::sqrt(1.0 - c) * normal(gen);
            const double e = std::sqrt(h[m]) * z;
            returns[m][t] = e;
            e2[m] = e * e;
        }
    }
    RegimeShift out;
    const auto start = volspill::parse_date("2015-01-01");
    out.panel = panel_from_returns({"M1", "M2", "M3", "M4", "M5"}, returns, start);
    // Return t is dated panel.dates[t + 1]; return per_window is the event day.
    out.event = out.panel.dates[per_window + 1];
    out.per_window = per_window;
    return out;
}

/// Fresh, empty directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("volspill_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const fs::path& path() const { return path_; }
    [[nodiscard]] fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

inline void write_panel(const fs::path& p, const volspill::PricePanel& panel) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    volspill::write_price_csv(out, panel);
}

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

inline CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "volspill");
    std::ostringstream out, err;
    CliResult r;
    r.code = volspill::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

/// (relative path, contents) of every regular file under `dir`, sorted.
inline std::vector<std::pair<std::string, std::string>> directory_snapshot(const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files.emplace_back(fs::relative(entry.path(), dir).generic_string(), slurp(entry.path()));
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace testsupport
