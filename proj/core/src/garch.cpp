#include "volspill/garch.hpp"

#include "garch_internal.hpp"
#include "volspill/error.hpp"
#include "volspill/random.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <numeric>

namespace volspill {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void check_finite(std::span<const double> values, std::string_view what) {
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (!std::isfinite(values[t])) {
            throw InputError(fmt::format("non-finite {} at index {}", what, t));
        }
    }
}

void require_admissible(const GarchSpec& spec, const GarchParams& params) {
    if (auto why = admissibility_violation(spec, params); !why.empty()) {
        throw InputError(fmt::format("inadmissible {} parameters: {}", spec.label(), why));
    }
}

void require_length(const GarchSpec& spec, std::size_t n) {
    const std::size_t need = 10 * free_parameter_count(spec);
    if (n < need) {
        throw InputError(fmt::format("{} needs at least {} returns (10 per free parameter), got {}",
                                     spec.label(), need, n));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Recursion and likelihood

std::vector<double> variance_recursion(const GarchSpec& spec, const GarchParams& params,
                                       std::span<const double> residuals, double initial_variance) {
    require_admissible(spec, params);
    check_finite(residuals, "residual");
    if (!(initial_variance > 0.0) || !std::isfinite(initial_variance)) {
        throw InputError(fmt::format("initial variance must be positive, got {}", initial_variance));
    }
    detail::VarianceFilter filter(spec, params, initial_variance, residuals);
    for (std::size_t t = 0; t < residuals.size(); ++t) filter.compute(t);
    return filter.variance();
}

std::vector<double> variance_recursion(const GarchSpec& spec, const GarchParams& params,
                                       std::span<const double> residuals) {
    double h0 = 0.0;
    for (double e : residuals) h0 += e * e;
    h0 /= static_cast<double>(std::max<std::size_t>(residuals.size(), 1));
    return variance_recursion(spec, params, residuals, h0);
}

double presample_variance(std::span<const double> r) {
    const std::size_t n = r.size();
    if (n < 3) throw InputError("presample variance needs at least 3 returns");
    // OLS of r_t on (1, r_{t-1}), t = 2..n.
    const double m = static_cast<double>(n - 1);
    double sx = 0.0, sy = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        sx += r[t - 1];
        sy += r[t];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        sxx += (r[t - 1] - mx) * (r[t - 1] - mx);
        sxy += (r[t - 1] - mx) * (r[t] - my);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    const double icpt = my - slope * mx;
    double ssr = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double e = r[t] - icpt - slope * r[t - 1];
        ssr += e * e;
    }
    return ssr / m;
}

LogLikelihood log_likelihood(const GarchSpec& spec, const GarchParams& params,
                             std::span<const double> returns, double initial_variance) {
    require_admissible(spec, params);
    require_length(spec, returns.size());
    if (!(initial_variance > 0.0) || !std::isfinite(initial_variance)) {
        throw NumericalError(fmt::format("pre-sample variance must be positive, got {}", initial_variance));
    }
    const std::size_t m = returns.size() - 1;
    LogLikelihood out;
    out.residuals.assign(m, 0.0);
    detail::VarianceFilter filter(spec, params, initial_variance, out.residuals);
    double ll = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double h = filter.compute(t);
        const double mean = params.constant + params.ar1 * returns[t] + params.in_mean * h;
        const double e = returns[t + 1] - mean;
        out.residuals[t] = e;
        ll -= 0.5 * (kLog2Pi + std::log(h) + e * e / h);
    }
    if (!std::isfinite(ll)) throw NumericalError(fmt::format("{}: log-likelihood is not finite", spec.label()));
    out.value = ll;
    out.cond_variance = filter.variance();
    return out;
}

LogLikelihood log_likelihood(const GarchSpec& spec, const GarchParams& params,
                             std::span<const double> returns) {
    check_finite(returns, "return");
    require_length(spec, returns.size());
    return log_likelihood(spec, params, returns, presample_variance(returns));
}

LogLikelihood log_likelihood(const GarchSpec& spec, const GarchParams& params,
                             const ReturnSeries& returns) {
    return log_likelihood(spec, params, std::span<const double>(returns.values));
}

// ---------------------------------------------------------------------------
// Free parameters

std::vector<std::string> parameter_names(const GarchSpec& spec) {
    spec.validate();
    std::vector<std::string> names = {"C", "rho"};
    if (spec.family == Family::GARCHM) names.emplace_back("lambda");
    auto indexed = [&](std::string_view base, int count) {
        for (int i = 1; i <= count; ++i) names.push_back(fmt::format("{}{}", base, i));
    };
    switch (spec.family) {
        case Family::GARCH:
        case Family::GARCHM:
            names.emplace_back("omega");
            indexed("alpha", spec.q);
            indexed("beta", spec.p);
            break;
        case Family::IGARCH:
            names.emplace_back("omega");
            indexed("alpha", spec.q);
            indexed("beta", spec.p - 1);
            break;
        case Family::TGARCH:
        case Family::EGARCH:
            names.emplace_back("omega");
            indexed("alpha", spec.q);
            indexed("gamma", spec.q);
            indexed("beta", spec.p);
            break;
        case Family::PGARCH:
            names.emplace_back("omega");
            indexed("alpha", spec.q);
            indexed("beta", spec.p);
            names.emplace_back("phi");
            break;
        case Family::APGARCH:
            names.emplace_back("omega");
            indexed("alpha", spec.q);
            indexed("gamma", spec.q);
            indexed("beta", spec.p);
            names.emplace_back("phi");
            break;
        case Family::CGARCH:
            names.insert(names.end(), {"sigma_bar", "alpha1", "beta1", "rho_c", "phi_c"});
            break;
        case Family::CMTGARCH:
            names.insert(names.end(), {"omega", "alpha1", "gamma1", "beta1"});
            break;
    }
    return names;
}

std::size_t free_parameter_count(const GarchSpec& spec) { return parameter_names(spec).size(); }

std::vector<double> parameter_values(const GarchSpec& spec, const GarchParams& par) {
    std::vector<double> v = {par.constant, par.ar1};
    if (spec.family == Family::GARCHM) v.push_back(par.in_mean);
    auto append = [&](const std::vector<double>& xs, std::size_t count) {
        v.insert(v.end(), xs.begin(), xs.begin() + static_cast<long>(count));
    };
    const auto q = static_cast<std::size_t>(spec.q);
    const auto p = static_cast<std::size_t>(spec.p);
    switch (spec.family) {
        case Family::GARCH:
        case Family::GARCHM:
            v.push_back(par.omega);
            append(par.alpha, q);
            append(par.beta, p);
            break;
        case Family::IGARCH:
            v.push_back(par.omega);
            append(par.alpha, q);
            append(par.beta, p - 1);
            break;
        case Family::TGARCH:
        case Family::EGARCH:
            v.push_back(par.omega);
            append(par.alpha, q);
            append(par.gamma, q);
            append(par.beta, p);
            break;
        case Family::PGARCH:
            v.push_back(par.omega);
            append(par.alpha, q);
            append(par.beta, p);
            v.push_back(par.power);
            break;
        case Family::APGARCH:
            v.push_back(par.omega);
            append(par.alpha, q);
            append(par.gamma, q);
            append(par.beta, p);
            v.push_back(par.power);
            break;
        case Family::CGARCH:
            v.insert(v.end(), {par.sigma_bar, par.alpha[0], par.beta[0], par.rho_c, par.component_loading});
            break;
        case Family::CMTGARCH:
            v.insert(v.end(), {par.omega, par.alpha[0], par.gamma[0], par.beta[0]});
            break;
    }
    return v;
}

GarchParams params_from_values(const GarchSpec& spec, std::span<const double> values) {
    if (values.size() != free_parameter_count(spec)) {
        throw InputError(fmt::format("{} has {} free parameters, got {} values", spec.label(),
                                     free_parameter_count(spec), values.size()));
    }
    GarchParams par = GarchParams::zeros(spec);
    std::size_t k = 0;
    par.constant = values[k++];
    par.ar1 = values[k++];
    if (spec.family == Family::GARCHM) par.in_mean = values[k++];
    auto take = [&](std::vector<double>& xs, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) xs[i] = values[k++];
    };
    const auto q = static_cast<std::size_t>(spec.q);
    const auto p = static_cast<std::size_t>(spec.p);
    switch (spec.family) {
        case Family::GARCH:
        case Family::GARCHM:
            par.omega = values[k++];
            take(par.alpha, q);
            take(par.beta, p);
            break;
        case Family::IGARCH: {
            par.omega = values[k++];
            take(par.alpha, q);
            take(par.beta, p - 1);
            const double used = std::accumulate(par.alpha.begin(), par.alpha.end(), 0.0) +
                                std::accumulate(par.beta.begin(), par.beta.end() - 1, 0.0);
            par.beta[p - 1] = 1.0 - used;
            break;
        }
        case Family::TGARCH:
        case Family::EGARCH:
            par.omega = values[k++];
            take(par.alpha, q);
            take(par.gamma, q);
            take(par.beta, p);
            break;
        case Family::PGARCH:
            par.omega = values[k++];
            take(par.alpha, q);
            take(par.beta, p);
            par.power = values[k++];
            break;
        case Family::APGARCH:
            par.omega = values[k++];
            take(par.alpha, q);
            take(par.gamma, q);
            take(par.beta, p);
            par.power = values[k++];
            break;
        case Family::CGARCH:
            par.sigma_bar = values[k++];
            par.alpha[0] = values[k++];
            par.beta[0] = values[k++];
            par.rho_c = values[k++];
            par.component_loading = values[k++];
            break;
        case Family::CMTGARCH:
            par.omega = values[k++];
            par.alpha[0] = values[k++];
            par.gamma[0] = values[k++];
            par.beta[0] = values[k++];
            break;
    }
    return par;
}

// ---------------------------------------------------------------------------
// Objective

GarchObjective::GarchObjective(GarchSpec spec, std::span<const double> returns)
    : spec_(spec), returns_(returns.begin(), returns.end()) {
    spec_.validate();
    check_finite(returns_, "return");
    require_length(spec_, returns_.size());
    h0_ = presample_variance(returns_);
}

double GarchObjective::operator()(const Eigen::VectorXd& u) const {
    if (!u.allFinite()) return std::numeric_limits<double>::infinity();
    const GarchParams par = decode(u);
    if (!is_admissible(spec_, par)) return std::numeric_limits<double>::infinity();
    try {
        const auto ll = log_likelihood(spec_, par, returns_, h0_);
        return -ll.value / static_cast<double>(observations());
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

std::size_t GarchObjective::dimension() const { return detail::unconstrained_dimension(spec_); }

Eigen::VectorXd GarchObjective::initial_point() const {
    return detail::encode(spec_, detail::initial_params(spec_, returns_));
}

GarchParams GarchObjective::decode(const Eigen::VectorXd& u) const { return detail::decode(spec_, u); }

Eigen::VectorXd GarchObjective::encode(const GarchParams& params) const {
    return detail::encode(spec_, params);
}

// ---------------------------------------------------------------------------
// Fitting

namespace {

void fill_metrics(GarchFit& fit) {
    fit.persistence = persistence(fit.spec, fit.params);
    fit.leverage = has_leverage(fit.spec.family) ? std::optional<double>(fit.params.gamma[0]) : std::nullopt;
    fit.asymmetry_degree = asymmetry_degree(fit.spec, fit.params);
    fit.aic = aic(fit.log_likelihood, fit.free_parameters());
}

void compute_std_errors(GarchFit& fit, const GarchObjective& objective, const Eigen::VectorXd& u) {
    const std::size_t k = fit.param_values.size();
    fit.std_errors.assign(k, std::numeric_limits<double>::quiet_NaN());
    fit.p_values.assign(k, std::numeric_limits<double>::quiet_NaN());

    const double m = static_cast<double>(objective.observations());
    const optim::Objective total = [&](const Eigen::VectorXd& x) { return m * objective(x); };
    const Eigen::MatrixXd hess = optim::numerical_hessian(total, u);
    if (!hess.allFinite()) return;
    Eigen::LLT<Eigen::MatrixXd> llt(hess);
    if (llt.info() != Eigen::Success) return;
    const Eigen::MatrixXd cov_u = llt.solve(Eigen::MatrixXd::Identity(hess.rows(), hess.cols()));

    // Delta method: natural = g(u).
    const auto natural = [&](const Eigen::VectorXd& x) {
        const auto v = parameter_values(fit.spec, objective.decode(x));
        return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())).eval();
    };
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(k), u.size());
    Eigen::VectorXd probe = u;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(u[j]));
        probe[j] = u[j] + h;
        const Eigen::VectorXd up = natural(probe);
        probe[j] = u[j] - h;
        const Eigen::VectorXd dn = natural(probe);
        probe[j] = u[j];
        jac.col(j) = (up - dn) / (2.0 * h);
    }
    const Eigen::MatrixXd cov = jac * cov_u * jac.transpose();
    for (std::size_t i = 0; i < k; ++i) {
        const double var = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        if (!(var >= 0.0)) continue;
        const double se = std::sqrt(var);
        fit.std_errors[i] = se;
        if (se > 0.0) {
            fit.p_values[i] = std::erfc(std::abs(fit.param_values[i] / se) / std::numbers::sqrt2);
        }
    }
}

}  // namespace

GarchFit fit(const GarchSpec& spec, std::span<const double> returns, const FitOptions& opts) {
    spec.validate();
    check_finite(returns, "return");
    require_length(spec, returns.size());
    const GarchObjective objective(spec, returns);
    if (!(objective.initial_variance() > 0.0)) {
        throw NumericalError(fmt::format("{}: series has zero variance; no interior optimum", spec.label()));
    }

    const optim::Objective f = [&](const Eigen::VectorXd& u) { return objective(u); };
    const auto result = optim::minimize_bfgs(f, objective.initial_point(), opts.bfgs);

    GarchFit out;
    out.spec = spec;
    out.converged = result.converged;
    out.iterations = result.iterations;
    out.gradient_norm = result.gradient_norm;
    out.message = result.message;
    if (!std::isfinite(result.value)) {
        out.converged = false;
        return out;
    }
    out.params = objective.decode(result.x);
    const auto ll = log_likelihood(spec, out.params, returns, objective.initial_variance());
    out.log_likelihood = ll.value;
    out.cond_variance = ll.cond_variance;
    out.residuals = ll.residuals;
    out.std_residuals.resize(out.residuals.size());
    for (std::size_t t = 0; t < out.residuals.size(); ++t) {
        out.std_residuals[t] = out.residuals[t] / std::sqrt(out.cond_variance[t]);
    }
    out.param_names = parameter_names(spec);
    out.param_values = parameter_values(spec, out.params);
    fill_metrics(out);
    if (opts.compute_std_errors) {
        compute_std_errors(out, objective, result.x);
    } else {
        out.std_errors.assign(out.param_values.size(), std::numeric_limits<double>::quiet_NaN());
        out.p_values = out.std_errors;
    }
    return out;
}

GarchFit fit(const GarchSpec& spec, const ReturnSeries& returns, const FitOptions& opts) {
    try {
        return fit(spec, std::span<const double>(returns.values), opts);
    } catch (const InputError& e) {
        throw InputError(fmt::format("{}: {}", returns.market, e.what()));
    }
}

double aic(double log_likelihood, std::size_t free_parameters) {
    return 2.0 * static_cast<double>(free_parameters) - 2.0 * log_likelihood;
}

double aic(const GarchFit& fit) { return aic(fit.log_likelihood, fit.free_parameters()); }

std::vector<CandidateOutcome> fit_candidates(const std::vector<GarchSpec>& candidates,
                                             std::span<const double> returns, const FitOptions& opts) {
    std::vector<CandidateOutcome> outcomes;
    outcomes.reserve(candidates.size());
    for (const auto& spec : candidates) {
        CandidateOutcome oc;
        oc.spec = spec;
        try {
            oc.fit = fit(spec, returns, opts);
            if (!oc.fit->converged) oc.failure = fmt::format("did not converge ({})", oc.fit->message);
        } catch (const std::exception& e) {
            // Selection errors prefix the label themselves.
            std::string_view what = e.what();
            const std::string prefix = spec.label() + ": ";
            if (what.starts_with(prefix)) what.remove_prefix(prefix.size());
            oc.failure = std::string(what);
        }
        outcomes.push_back(std::move(oc));
    }
    return outcomes;
}

const GarchFit& select_best(const std::vector<CandidateOutcome>& outcomes) {
    if (outcomes.empty()) throw InputError("model selection needs at least one candidate");
    const GarchFit* best = nullptr;
    for (const auto& oc : outcomes) {
        if (!oc.fit || !oc.fit->converged || !oc.failure.empty()) continue;
        const GarchFit& f = *oc.fit;
        if (best == nullptr) {
            best = &f;
            continue;
        }
        const double tol = 1e-9 * std::max(1.0, std::abs(best->aic));
        if (f.aic < best->aic - tol) {
            best = &f;
        } else if (std::abs(f.aic - best->aic) <= tol) {
            if (f.free_parameters() < best->free_parameters() ||
                (f.free_parameters() == best->free_parameters() && f.spec.family < best->spec.family)) {
                best = &f;
            }
        }
    }
    if (best == nullptr) {
        std::string why;
        for (const auto& oc : outcomes) {
            why += fmt::format("\n  {}: {}", oc.spec.label(), oc.failure.empty() ? "no fit" : oc.failure);
        }
        throw NumericalError("no candidate model converged:" + why);
    }
    return *best;
}

GarchFit select_model(const std::vector<GarchSpec>& candidates, std::span<const double> returns,
                      const FitOptions& opts) {
    if (candidates.empty()) throw InputError("model selection needs at least one candidate");
    const auto outcomes = fit_candidates(candidates, returns, opts);
    return select_best(outcomes);
}

// ---------------------------------------------------------------------------
// Metrics

double persistence(const GarchSpec& spec, const GarchParams& params) {
    (void)spec;
    const double a = std::accumulate(params.alpha.begin(), params.alpha.end(), 0.0);
    const double b = std::accumulate(params.beta.begin(), params.beta.end(), 0.0);
    const double g = std::accumulate(params.gamma.begin(), params.gamma.end(), 0.0);
    return a + b + 0.5 * g;
}

double persistence(const GarchFit& fit) { return persistence(fit.spec, fit.params); }

std::optional<double> asymmetry_degree(const GarchSpec& spec, const GarchParams& params) {
    if (!has_leverage(spec.family) || params.gamma.empty() || params.alpha.empty()) return std::nullopt;
    if (params.alpha[0] == 0.0) return std::nullopt;
    return (params.alpha[0] + params.gamma[0]) / params.alpha[0];
}

std::optional<double> asymmetry_degree(const GarchFit& fit) { return asymmetry_degree(fit.spec, fit.params); }

// ---------------------------------------------------------------------------
// Simulation

ReturnSeries simulate(const GarchSpec& spec, const GarchParams& params, std::size_t n, std::uint64_t seed) {
    require_admissible(spec, params);
    if (n < 1) throw InputError("simulate needs n >= 1");
    double h0 = 0.0;
    if (spec.family == Family::IGARCH) {
        h0 = params.omega / 0.01;
    } else {
        const double s = stationarity_measure(spec, params);
        if (!(s < 1.0)) {
            throw InputError(fmt::format("{}: persistence {} >= 1 has no finite unconditional variance",
                                         spec.label(), s));
        }
        h0 = unconditional_variance(spec, params);
    }
    if (!(h0 > 0.0) || !std::isfinite(h0)) {
        throw InputError(fmt::format("{}: unconditional variance {} is not usable", spec.label(), h0));
    }

    NormalRng rng(seed);
    std::vector<double> eps(n, 0.0);
    detail::VarianceFilter filter(spec, params, h0, eps);
    ReturnSeries out;
    out.market = "simulated";
    out.values.resize(n);
    out.dates.resize(n);
    const Date origin{std::chrono::year{2000}, std::chrono::January, std::chrono::day{1}};
    double prev = std::abs(params.ar1) < 1.0 ? params.constant / (1.0 - params.ar1) : params.constant;
    for (std::size_t t = 0; t < n; ++t) {
        const double h = filter.compute(t);
        eps[t] = std::sqrt(h) * rng();
        const double r = params.constant + params.ar1 * prev + params.in_mean * h + eps[t];
        out.values[t] = r;
        out.dates[t] = add_days(origin, static_cast<int>(t));
        prev = r;
    }
    return out;
}

}  // namespace volspill
