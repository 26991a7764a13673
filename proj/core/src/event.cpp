#include "volspill/event.hpp"

#include "volspill/error.hpp"

#include <algorithm>
#include <atomic>
#include <fmt/format.h>
#include <thread>

namespace volspill {

std::vector<std::string> EventReport::retained_markets() const { return deltas.markets; }

namespace {

struct FitTask {
    std::size_t market;
    int window;  // 0 = pre, 1 = post
    const std::vector<double>* returns;
};

struct FitSlot {
    std::vector<CandidateOutcome> outcomes;
    std::optional<GarchFit> best;
    std::string failure;
};

void run_fit_tasks(const std::vector<FitTask>& tasks, std::vector<FitSlot>& slots, const EventOptions& options) {
    unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            FitSlot& slot = slots[i];
            try {
                slot.outcomes = fit_candidates(options.candidates, *tasks[i].returns, options.fit);
                slot.best = select_best(slot.outcomes);
            } catch (const std::exception& e) {
                slot.failure = e.what();
            }
        }
    };
    if (workers <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

}  // namespace

EventDeltas compute_deltas(const std::vector<std::string>& markets, const WindowResult& pre,
                           const WindowResult& post, const std::vector<std::string>& retained) {
    EventDeltas d;
    d.markets = retained;
    for (const auto& name : retained) {
        const std::size_t m = index_of(markets, name);
        if (m >= markets.size() || m >= pre.fits.size() || m >= post.fits.size() || !pre.fits[m] ||
            !post.fits[m]) {
            throw InputError(fmt::format("market {} has no fit in both windows", name));
        }
        d.persistence.push_back(post.fits[m]->persistence - pre.fits[m]->persistence);
        const std::size_t a = index_of(pre.spillover.markets, name);
        const std::size_t b = index_of(post.spillover.markets, name);
        if (a >= pre.spillover.markets.size() || b >= post.spillover.markets.size()) {
            throw InputError(fmt::format("market {} missing from a spillover table", name));
        }
        d.net.push_back(post.spillover.net[static_cast<Eigen::Index>(b)] -
                        pre.spillover.net[static_cast<Eigen::Index>(a)]);
    }
    d.total_index = post.spillover.total_index - pre.spillover.total_index;
    return d;
}

EventReport run_event_analysis(const PricePanel& panel, const EventWindowConfig& cfg,
                               const EventOptions& options) {
    if (panel.markets.size() < 2) {
        throw InputError(fmt::format("event analysis needs at least 2 markets for spillovers, got {}",
                                     panel.markets.size()));
    }
    if (options.candidates.empty()) throw InputError("event analysis needs at least one candidate model");
    cfg.validate();

    const auto returns = log_returns(panel, options.scale);
    const std::size_t n_markets = returns.size();

    EventReport report;
    report.config = cfg;
    report.markets = panel.markets;
    for (const auto& spec : options.candidates) report.families.emplace_back(family_name(spec.family));
    report.pre.name = "pre";
    report.post.name = "post";

    std::vector<ReturnSeries> pre_series, post_series;
    for (const auto& rs : returns) {
        auto [pre, post] = split_event(rs, cfg);
        pre_series.push_back(std::move(pre));
        post_series.push_back(std::move(post));
    }
    report.pre.dates = pre_series.front().dates;
    report.post.dates = post_series.front().dates;

    for (std::size_t m = 0; m < n_markets; ++m) {
        // A frozen market fails at the fit stage and is reported there.
        report.pre.stats.push_back(describe(pre_series[m], ZeroVariance::Undefined));
        report.post.stats.push_back(describe(post_series[m], ZeroVariance::Undefined));
    }

    std::vector<FitTask> tasks;
    for (std::size_t m = 0; m < n_markets; ++m) {
        tasks.push_back({m, 0, &pre_series[m].values});
        tasks.push_back({m, 1, &post_series[m].values});
    }
    std::vector<FitSlot> slots(tasks.size());
    run_fit_tasks(tasks, slots, options);

    report.pre.fits.resize(n_markets);
    report.post.fits.resize(n_markets);
    report.pre.candidates.resize(n_markets);
    report.post.candidates.resize(n_markets);

    std::vector<std::string> retained;
    for (std::size_t m = 0; m < n_markets; ++m) {
        FitSlot& pre = slots[2 * m];
        FitSlot& post = slots[2 * m + 1];
        if (!pre.best || !post.best) {
            MarketFailure failure;
            failure.market = panel.markets[m];
            std::string reasons;
            if (!pre.best) {
                failure.windows.emplace_back("pre");
                reasons += fmt::format("pre: {}", pre.failure);
            }
            if (!post.best) {
                failure.windows.emplace_back("post");
                reasons += fmt::format("{}post: {}", reasons.empty() ? "" : "\n", post.failure);
            }
            failure.reasons = std::move(reasons);
            report.failures.push_back(std::move(failure));
            continue;
        }
        retained.push_back(panel.markets[m]);
        auto summarize = [](const std::vector<CandidateOutcome>& outcomes) {
            std::vector<CandidateSummary> out;
            for (const auto& oc : outcomes) {
                CandidateSummary s;
                s.family = oc.spec.family;
                s.converged = oc.fit && oc.fit->converged && oc.failure.empty();
                s.aic = oc.fit ? oc.fit->aic : 0.0;
                s.failure = oc.failure;
                out.push_back(std::move(s));
            }
            return out;
        };
        report.pre.candidates[m] = summarize(pre.outcomes);
        report.post.candidates[m] = summarize(post.outcomes);
        report.pre.fits[m] = std::move(pre.best);
        report.post.fits[m] = std::move(post.best);
    }
    if (retained.size() < 2) {
        throw NumericalError(fmt::format("only {} market(s) have a converged model in both windows; "
                                         "spillovers need at least 2",
                                         retained.size()));
    }

    auto build_spillover = [&](WindowResult& window) {
        std::vector<std::vector<double>> variances;
        for (std::size_t m = 0; m < n_markets; ++m) {
            if (window.fits[m]) variances.push_back(window.fits[m]->cond_variance);
        }
        // Conditional variances start at the second return of the window.
        std::vector<Date> dates(window.dates.begin() + 1, window.dates.end());
        const auto vol = VolatilityPanel::from_variances(retained, std::move(dates), variances, options.var.transform);
        try {
            window.spillover = spillover_table(vol, options.var);
        } catch (const InputError& e) {
            throw InputError(fmt::format("{} window: {}", window.name, e.what()));
        }
    };
    build_spillover(report.pre);
    build_spillover(report.post);

    report.deltas = compute_deltas(report.markets, report.pre, report.post, retained);
    return report;
}

}  // namespace volspill
