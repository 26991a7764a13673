#pragma once

#include "volspill/date.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace volspill {

/// Aligned price levels, one column per market.
struct PricePanel {
    std::vector<std::string> markets;
    std::vector<Date> dates;
    /// prices[m][t] is market m at dates[t].
    std::vector<std::vector<double>> prices;

    /// Throws InputError naming the offending market/date when a price is
    /// non-positive, dates are not strictly increasing, or columns are ragged.
    void validate() const;

    /// Keeps only the named markets, in the given order.
    [[nodiscard]] PricePanel select(const std::vector<std::string>& names) const;
};

struct ReturnSeries {
    std::string market;
    std::vector<Date> dates;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

struct DescriptiveStats {
    double mean = 0.0;
    double median = 0.0;
    double maximum = 0.0;
    double minimum = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double jarque_bera = 0.0;
    double jb_p_value = 1.0;
    std::size_t n = 0;
};

struct EventWindowConfig {
    Date event_date;
    Date pre_start;
    Date pre_end;
    Date post_start;
    Date post_end;
    bool require_equal_length = false;

    void validate() const;
};

/// ln(p[t+1]) - ln(p[t]) per market, multiplied by `scale`.
std::vector<ReturnSeries> log_returns(const PricePanel& panel, double scale = 1.0);

/// Jarque-Bera statistic from sample size, skewness and (non-excess) kurtosis.
double jarque_bera(std::size_t n, double skewness, double kurtosis);

/// Upper tail of the chi-square distribution with 2 degrees of freedom.
double chi2_2df_survival(double x);

enum class ZeroVariance { Throw, Undefined };

/// Moment statistics with divide-by-n central moments. A constant series
/// throws, or with ZeroVariance::Undefined gets NaN moment ratios.
DescriptiveStats describe(const ReturnSeries& series, ZeroVariance zero_variance = ZeroVariance::Throw);

/// Pre and post window slices. Observations dated on the event day are in
/// neither slice.
std::pair<ReturnSeries, ReturnSeries> split_event(const ReturnSeries& series,
                                                  const EventWindowConfig& cfg);

}  // namespace volspill
