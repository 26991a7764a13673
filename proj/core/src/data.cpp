#include "volspill/data.hpp"

#include "volspill/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

namespace volspill {

void PricePanel::validate() const {
    for (std::size_t t = 1; t < dates.size(); ++t) {
        if (!(dates[t - 1] < dates[t])) {
            throw InputError(fmt::format("dates not strictly increasing at {}", format_date(dates[t])));
        }
    }
    if (prices.size() != markets.size()) {
        throw InputError(fmt::format("{} markets but {} price columns", markets.size(), prices.size()));
    }
    for (std::size_t m = 0; m < markets.size(); ++m) {
        if (prices[m].size() != dates.size()) {
            throw InputError(fmt::format("market {} has {} prices for {} dates", markets[m],
                                         prices[m].size(), dates.size()));
        }
        for (std::size_t t = 0; t < dates.size(); ++t) {
            const double p = prices[m][t];
            if (!(p > 0.0) || !std::isfinite(p)) {
                throw InputError(fmt::format("non-positive price {} for market {} on {}", p, markets[m],
                                             format_date(dates[t])));
            }
        }
    }
}

PricePanel PricePanel::select(const std::vector<std::string>& names) const {
    PricePanel out;
    out.dates = dates;
    for (const auto& name : names) {
        auto it = std::find(markets.begin(), markets.end(), name);
        if (it == markets.end()) throw InputError(fmt::format("unknown market '{}'", name));
        out.markets.push_back(name);
        out.prices.push_back(prices[static_cast<std::size_t>(it - markets.begin())]);
    }
    return out;
}

void EventWindowConfig::validate() const {
    if (!(pre_start < pre_end && pre_end < event_date && event_date <= post_start &&
          post_start < post_end)) {
        throw InputError(fmt::format(
            "event windows must satisfy pre_start < pre_end < event_date <= post_start < post_end "
            "(got {}..{}, event {}, {}..{})",
            format_date(pre_start), format_date(pre_end), format_date(event_date),
            format_date(post_start), format_date(post_end)));
    }
}

std::vector<ReturnSeries> log_returns(const PricePanel& panel, double scale) {
    panel.validate();
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InputError(fmt::format("scale factor must be positive, got {}", scale));
    }
    std::vector<ReturnSeries> out;
    out.reserve(panel.markets.size());
    for (std::size_t m = 0; m < panel.markets.size(); ++m) {
        ReturnSeries rs;
        rs.market = panel.markets[m];
        const auto& p = panel.prices[m];
        if (p.size() >= 2) {
            rs.dates.assign(panel.dates.begin() + 1, panel.dates.end());
            rs.values.resize(p.size() - 1);
            for (std::size_t t = 0; t + 1 < p.size(); ++t) {
                rs.values[t] = scale * (std::log(p[t + 1]) - std::log(p[t]));
            }
        }
        out.push_back(std::move(rs));
    }
    return out;
}

double jarque_bera(std::size_t n, double skewness, double kurtosis) {
    const double excess = kurtosis - 3.0;
    return static_cast<double>(n) / 6.0 * (skewness * skewness + excess * excess / 4.0);
}

double chi2_2df_survival(double x) {
    if (!(x > 0.0)) return 1.0;
    return std::exp(-0.5 * x);
}

DescriptiveStats describe(const ReturnSeries& series, ZeroVariance zero_variance) {
    const auto& v = series.values;
    const std::size_t n = v.size();
    if (n < 4) {
        throw InputError(fmt::format("describe needs at least 4 observations for {}, got {}",
                                     series.market, n));
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (!std::isfinite(v[t])) {
            throw InputError(fmt::format("non-finite return for {} at index {}", series.market, t));
        }
    }
    DescriptiveStats s;
    s.n = n;
    const double dn = static_cast<double>(n);
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / dn;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    if (!(m2 > 0.0) && zero_variance == ZeroVariance::Throw) {
        throw InputError(fmt::format("zero variance for {}; skewness undefined", series.market));
    }

    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    s.minimum = sorted.front();
    s.maximum = sorted.back();
    s.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    // Sample standard deviation (n - 1), as in the usual statistics table;
    // the moment ratios use the divide-by-n convention.
    s.std_dev = std::sqrt(m2 * dn / (dn - 1.0));
    if (!(m2 > 0.0)) {
        s.skewness = s.kurtosis = s.jarque_bera = s.jb_p_value = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
    s.jarque_bera = jarque_bera(n, s.skewness, s.kurtosis);
    s.jb_p_value = chi2_2df_survival(s.jarque_bera);
    return s;
}

std::pair<ReturnSeries, ReturnSeries> split_event(const ReturnSeries& series,
                                                  const EventWindowConfig& cfg) {
    cfg.validate();
    ReturnSeries pre, post;
    pre.market = series.market;
    post.market = series.market;
    for (std::size_t t = 0; t < series.dates.size(); ++t) {
        const Date& d = series.dates[t];
        if (d == cfg.event_date) continue;
        if (cfg.pre_start <= d && d <= cfg.pre_end && d < cfg.event_date) {
            pre.dates.push_back(d);
            pre.values.push_back(series.values[t]);
        } else if (cfg.post_start <= d && d <= cfg.post_end && d > cfg.event_date) {
            post.dates.push_back(d);
            post.values.push_back(series.values[t]);
        }
    }
    if (pre.values.empty()) {
        throw InputError(fmt::format("pre-event window {}..{} contains no observations for {}",
                                     format_date(cfg.pre_start), format_date(cfg.pre_end),
                                     series.market));
    }
    if (post.values.empty()) {
        throw InputError(fmt::format("post-event window {}..{} contains no observations for {}",
                                     format_date(cfg.post_start), format_date(cfg.post_end),
                                     series.market));
    }
    if (cfg.require_equal_length && pre.size() != post.size()) {
        throw InputError(fmt::format("unequal event windows for {}: pre has {} observations, post has {}",
                                     series.market, pre.size(), post.size()));
    }
    return {std::move(pre), std::move(post)};
}

}  // namespace volspill
