#pragma once

#include "volspill/data.hpp"
#include "volspill/event.hpp"
#include "volspill/garch.hpp"
#include "volspill/spillover.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace volspill {

// Descriptive statistics: one row per statistic in the order Mean, Median,
// Maximum, Minimum, Std. Dev., Skewness, Kurtosis, Jarque-Bera, Probability,
// one column per market.
void write_stats_csv(std::ostream& out, const std::vector<std::string>& markets,
                     const std::vector<DescriptiveStats>& stats);
std::string stats_to_json(const std::vector<std::string>& markets,
                          const std::vector<DescriptiveStats>& stats);

std::string fit_to_json(const GarchFit& fit);
GarchFit fit_from_json(std::string_view text);

// Estimation table: one row per market with C, lagged return, omega, alpha,
// beta, gamma (each followed by its p-value column), persistence, leverage.
void write_fits_csv(std::ostream& out, const std::vector<std::string>& markets,
                    const std::vector<const GarchFit*>& fits);
std::string fits_to_json(const std::vector<std::string>& markets,
                         const std::vector<const GarchFit*>& fits);

// Input-output layout: N x N block with "Contribution from others" column,
// then "Contribution to others" (total index in the corner) and
// "Contribution including own" rows. `with_shares` appends the from/to
// columns divided by N.
void write_spillover_csv(std::ostream& out, const SpilloverTable& table, bool with_shares = false);
std::string spillover_to_json(const SpilloverTable& table);

void write_net_csv(std::ostream& out, const SpilloverTable& table);

std::string report_to_json(const EventReport& report);

/// Writes stats_{pre,post}.csv, fits_{pre,post}.json, spillover_{pre,post}.csv,
/// net_{pre,post}.csv, deltas.csv and report.json; with `plots`, also SVG
/// conditional-variance and net-spillover charts under plots/.
void write_event_report(const std::filesystem::path& dir, const EventReport& report, bool plots);

/// Fixed-precision number formatting shared by every text output.
std::string format_number(double value, int precision = 6);

}  // namespace volspill
