#pragma once

#include "volspill/data.hpp"
#include "volspill/garch.hpp"
#include "volspill/spillover.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace volspill {

struct CandidateSummary {
    Family family = Family::GARCH;
    bool converged = false;
    double aic = 0.0;
    std::string failure;
};

struct WindowResult {
    std::string name;  ///< "pre" or "post"
    std::vector<Date> dates;
    std::vector<DescriptiveStats> stats;           ///< per market, panel order
    std::vector<std::optional<GarchFit>> fits;     ///< per market; empty for failed markets
    std::vector<std::vector<CandidateSummary>> candidates;
    SpilloverTable spillover;                      ///< over retained markets only
};

struct MarketFailure {
    std::string market;
    std::vector<std::string> windows;  ///< windows where every candidate failed
    std::string reasons;
};

struct EventDeltas {
    std::vector<std::string> markets;        ///< retained markets
    std::vector<double> persistence;         ///< post - pre
    std::vector<double> net;                 ///< post - pre net spillover
    double total_index = 0.0;
};

struct EventReport {
    EventWindowConfig config;
    std::vector<std::string> markets;  ///< every input market
    std::vector<std::string> families; ///< candidate families, in order
    WindowResult pre;
    WindowResult post;
    std::vector<MarketFailure> failures;
    EventDeltas deltas;

    [[nodiscard]] std::vector<std::string> retained_markets() const;
};

struct EventOptions {
    std::vector<GarchSpec> candidates;
    SpilloverConfig var{};
    FitOptions fit{};
    double scale = 1.0;
    /// Upper bound on concurrent fits; 0 picks the hardware concurrency.
    unsigned workers = 0;
};

/// log returns -> window split -> per-window statistics, model selection and
/// spillover table -> post-minus-pre deltas. Markets whose candidates all fail
/// in either window are listed in `failures` and left out of both spillover
/// tables.
EventReport run_event_analysis(const PricePanel& panel, const EventWindowConfig& cfg,
                               const EventOptions& options);

/// Deltas recomputed from the paired window values.
/// `markets` is the panel order that indexes the window fits.
EventDeltas compute_deltas(const std::vector<std::string>& markets, const WindowResult& pre,
                           const WindowResult& post, const std::vector<std::string>& retained);

}  // namespace volspill
