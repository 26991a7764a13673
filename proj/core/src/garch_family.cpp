#include "garch_internal.hpp"

#include "volspill/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <numeric>

namespace volspill {

namespace {

constexpr std::array<std::string_view, 9> kFamilyNames = {
    "GARCH", "EGARCH", "TGARCH", "IGARCH", "PGARCH", "APGARCH", "GARCHM", "CGARCH", "CMTGARCH"};

// sqrt(2/pi) = E|z|.
constexpr double kAbsMean = 0.79788456080286535588;

constexpr double kLogVarianceLimit = 700.0;

bool has_power(Family f) { return f == Family::PGARCH || f == Family::APGARCH; }

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::string upper(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '-' || c == '_' || c == ' ') continue;
        out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

std::string_view family_name(Family f) noexcept { return kFamilyNames[static_cast<std::size_t>(f)]; }

std::optional<Family> parse_family(std::string_view name) {
    const std::string key = upper(name);
    for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
        if (key == kFamilyNames[i]) return static_cast<Family>(i);
    }
    if (key == "GJRGARCH" || key == "GJR") return Family::TGARCH;
    if (key == "CMT") return Family::CMTGARCH;
    return std::nullopt;
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> families = {
        Family::GARCH,  Family::EGARCH, Family::TGARCH, Family::IGARCH,  Family::PGARCH,
        Family::APGARCH, Family::GARCHM, Family::CGARCH, Family::CMTGARCH};
    return families;
}

bool has_leverage(Family f) noexcept {
    return f == Family::EGARCH || f == Family::TGARCH || f == Family::APGARCH || f == Family::CMTGARCH;
}

void GarchSpec::validate() const {
    if (p < 1 || q < 1) throw InputError(fmt::format("{}: orders must be >= 1 (p={}, q={})", label(), p, q));
    if ((family == Family::CGARCH || family == Family::CMTGARCH) && (p != 1 || q != 1)) {
        throw InputError(fmt::format("{} is defined for p = q = 1 only", family_name(family)));
    }
}

std::string GarchSpec::label() const {
    return fmt::format("{}({},{})", family_name(family), p, q);
}

GarchParams GarchParams::zeros(const GarchSpec& spec) {
    spec.validate();
    GarchParams par;
    par.alpha.assign(static_cast<std::size_t>(spec.q), 0.0);
    par.beta.assign(static_cast<std::size_t>(spec.p), 0.0);
    if (has_leverage(spec.family)) par.gamma.assign(static_cast<std::size_t>(spec.q), 0.0);
    return par;
}

namespace detail {

double abs_moment(double phi) {
    return std::exp(0.5 * phi * std::numbers::ln2 + std::lgamma(0.5 * (phi + 1.0)) -
                    0.5 * std::log(std::numbers::pi));
}

double asymmetric_abs_moment(double phi, double gamma) {
    return 0.5 * (std::pow(1.0 + gamma, phi) + std::pow(1.0 - gamma, phi)) * abs_moment(phi);
}

}  // namespace detail

double stationarity_measure(const GarchSpec& spec, const GarchParams& par) {
    switch (spec.family) {
        case Family::GARCH:
        case Family::GARCHM:
        case Family::IGARCH:
            return sum(par.alpha) + sum(par.beta);
        case Family::TGARCH:
            return sum(par.alpha) + sum(par.beta) + 0.5 * sum(par.gamma);
        case Family::EGARCH: {
            double s = 0.0;
            for (double b : par.beta) s += std::abs(b);
            return s;
        }
        case Family::PGARCH:
            return detail::abs_moment(par.power) * sum(par.alpha) + sum(par.beta);
        case Family::APGARCH: {
            double s = sum(par.beta);
            for (std::size_t i = 0; i < par.alpha.size(); ++i) {
                s += par.alpha[i] * detail::asymmetric_abs_moment(par.power, par.gamma[i]);
            }
            return s;
        }
        case Family::CGARCH:
            return par.rho_c;
        case Family::CMTGARCH: {
            const double a = par.alpha[0], b = par.beta[0], g = par.gamma[0];
            return a + b * a + 0.5 * b * g + b * b;
        }
    }
    return 0.0;
}

std::string admissibility_violation(const GarchSpec& spec, const GarchParams& par) {
    try {
        spec.validate();
    } catch (const InputError& e) {
        return e.what();
    }
    const auto q = static_cast<std::size_t>(spec.q);
    const auto p = static_cast<std::size_t>(spec.p);
    if (par.alpha.size() != q || par.beta.size() != p) {
        return fmt::format("expected {} alpha and {} beta coefficients", q, p);
    }
    if (has_leverage(spec.family) && par.gamma.size() != q) {
        return fmt::format("expected {} gamma coefficients", q);
    }
    auto all_finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    if (!std::isfinite(par.constant) || !std::isfinite(par.ar1) || !std::isfinite(par.in_mean) ||
        !std::isfinite(par.omega) || !all_finite(par.alpha) || !all_finite(par.beta) ||
        !all_finite(par.gamma) || !std::isfinite(par.power)) {
        return "non-finite parameter";
    }
    auto nonneg = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; });
    };
    const Family f = spec.family;
    if (f == Family::EGARCH) {
        if (!(stationarity_measure(spec, par) < 1.0)) return "EGARCH requires sum |beta| < 1";
        return {};
    }
    if (f == Family::CGARCH) {
        const double a = par.alpha[0], b = par.beta[0];
        if (!(par.sigma_bar > 0.0)) return "CGARCH requires sigma_bar > 0";
        if (!(a >= 0.0 && b >= 0.0)) return "CGARCH requires alpha, beta >= 0";
        if (!(a + b < par.rho_c && par.rho_c < 1.0)) return "CGARCH requires alpha + beta < rho_c < 1";
        if (!(par.component_loading >= 0.0 && par.component_loading <= b)) {
            return "CGARCH requires 0 <= component loading <= beta";
        }
        return {};
    }
    if (!(par.omega > 0.0)) return fmt::format("{} requires omega > 0", family_name(f));
    if (!nonneg(par.alpha) || !nonneg(par.beta)) {
        return fmt::format("{} requires alpha, beta >= 0", family_name(f));
    }
    if (f == Family::TGARCH || f == Family::CMTGARCH) {
        for (std::size_t i = 0; i < q; ++i) {
            if (!(par.alpha[i] + par.gamma[i] >= 0.0)) {
                return fmt::format("{} requires alpha + gamma >= 0", family_name(f));
            }
        }
    }
    if (f == Family::APGARCH) {
        for (double g : par.gamma) {
            if (!(std::abs(g) < 1.0)) return "APGARCH requires |gamma| < 1";
        }
    }
    if (has_power(f) && !(par.power > 0.0)) return fmt::format("{} requires phi > 0", family_name(f));
    const double s = stationarity_measure(spec, par);
    if (f == Family::IGARCH) {
        if (std::abs(s - 1.0) > 1e-9) return fmt::format("IGARCH requires sum(alpha) + sum(beta) = 1, got {}", s);
        return {};
    }
    if (!(s < 1.0)) return fmt::format("{} stationarity measure {} is not < 1", family_name(f), s);
    return {};
}

bool is_admissible(const GarchSpec& spec, const GarchParams& params) {
    return admissibility_violation(spec, params).empty();
}

double unconditional_variance(const GarchSpec& spec, const GarchParams& par) {
    const double s = stationarity_measure(spec, par);
    switch (spec.family) {
        case Family::EGARCH:
            return std::exp(par.omega / (1.0 - sum(par.beta)));
        case Family::PGARCH:
        case Family::APGARCH:
            return std::pow(par.omega / (1.0 - s), 2.0 / par.power);
        case Family::CGARCH:
            return par.sigma_bar;
        case Family::CMTGARCH:
            return par.omega * (1.0 + par.beta[0]) / (1.0 - s);
        default:
            return par.omega / (1.0 - s);
    }
}

namespace detail {

VarianceFilter::VarianceFilter(const GarchSpec& spec, const GarchParams& params,
                               double initial_variance, std::span<const double> residuals)
    : spec_(spec), par_(params), h0_(initial_variance), eps_(residuals) {
    h_.resize(residuals.size());
    state_.resize(residuals.size());
    switch (spec.family) {
        case Family::EGARCH:
            state0_ = std::log(h0_);
            break;
        case Family::PGARCH:
        case Family::APGARCH:
            state0_ = std::pow(h0_, 0.5 * par_.power);
            break;
        default:
            state0_ = h0_;
    }
}

double VarianceFilter::lag_eps(std::size_t t, int i) const {
    return t >= static_cast<std::size_t>(i) ? eps_[t - i] : 0.0;
}
double VarianceFilter::lag_eps2(std::size_t t, int i) const {
    if (t >= static_cast<std::size_t>(i)) return eps_[t - i] * eps_[t - i];
    return h0_;
}
double VarianceFilter::lag_abs(std::size_t t, int i) const {
    return t >= static_cast<std::size_t>(i) ? std::abs(eps_[t - i]) : std::sqrt(h0_);
}
double VarianceFilter::lag_h(std::size_t t, int j) const {
    return t >= static_cast<std::size_t>(j) ? h_[t - j] : h0_;
}
double VarianceFilter::lag_state(std::size_t t, int j) const {
    return t >= static_cast<std::size_t>(j) ? state_[t - j] : state0_;
}
double VarianceFilter::lag_z(std::size_t t, int i, bool& presample) const {
    presample = t < static_cast<std::size_t>(i);
    if (presample) return 0.0;
    return eps_[t - i] / std::sqrt(h_[t - i]);
}

double VarianceFilter::compute(std::size_t t) {
    const auto& par = par_;
    const int q = spec_.q;
    const int p = spec_.p;
    double h = 0.0;
    if (t == 0) {
        h_[0] = h0_;
        state_[0] = state0_;
        return h0_;
    }
    switch (spec_.family) {
        case Family::GARCH:
        case Family::GARCHM:
        case Family::IGARCH: {
            h = par.omega;
            for (int i = 1; i <= q; ++i) h += par.alpha[i - 1] * lag_eps2(t, i);
            for (int j = 1; j <= p; ++j) h += par.beta[j - 1] * lag_h(t, j);
            state_[t] = h;
            break;
        }
        case Family::TGARCH: {
            h = par.omega;
            for (int i = 1; i <= q; ++i) {
                const double bad = lag_eps(t, i) < 0.0 ? 1.0 : 0.0;
                h += (par.alpha[i - 1] + par.gamma[i - 1] * bad) * lag_eps2(t, i);
            }
            for (int j = 1; j <= p; ++j) h += par.beta[j - 1] * lag_h(t, j);
            state_[t] = h;
            break;
        }
        case Family::EGARCH: {
            double logh = par.omega;
            for (int i = 1; i <= q; ++i) {
                bool presample = false;
                const double z = lag_z(t, i, presample);
                if (presample) continue;
                logh += par.alpha[i - 1] * z + par.gamma[i - 1] * (std::abs(z) - kAbsMean);
            }
            for (int j = 1; j <= p; ++j) logh += par.beta[j - 1] * lag_state(t, j);
            if (!(logh < kLogVarianceLimit) || !std::isfinite(logh)) {
                throw NumericalError(
                    fmt::format("EGARCH log-variance overflow at index {} (log sigma^2 = {})", t, logh));
            }
            state_[t] = logh;
            h = std::exp(logh);
            break;
        }
        case Family::PGARCH: {
            double s = par.omega;
            for (int i = 1; i <= q; ++i) s += par.alpha[i - 1] * std::pow(lag_abs(t, i), par.power);
            for (int j = 1; j <= p; ++j) s += par.beta[j - 1] * lag_state(t, j);
            state_[t] = s;
            h = std::pow(s, 2.0 / par.power);
            break;
        }
        case Family::APGARCH: {
            double s = par.omega;
            for (int i = 1; i <= q; ++i) {
                const double base = lag_abs(t, i) - par.gamma[i - 1] * lag_eps(t, i);
                s += par.alpha[i - 1] * std::pow(base, par.power);
            }
            for (int j = 1; j <= p; ++j) s += par.beta[j - 1] * lag_state(t, j);
            state_[t] = s;
            h = std::pow(s, 2.0 / par.power);
            break;
        }
        case Family::CGARCH: {
            const double q_prev = lag_state(t, 1);
            const double h_prev = lag_h(t, 1);
            const double e2 = lag_eps2(t, 1);
            const double q_t = par.sigma_bar + par.rho_c * (q_prev - par.sigma_bar) +
                               par.component_loading * (e2 - h_prev);
            h = q_t + par.alpha[0] * (e2 - q_prev) + par.beta[0] * (h_prev - q_prev);
            state_[t] = q_t;
            break;
        }
        case Family::CMTGARCH: {
            const double a = par.alpha[0], b = par.beta[0], g = par.gamma[0];
            const double bad2 = lag_eps(t, 2) < 0.0 ? 1.0 : 0.0;
            h = par.omega + a * lag_eps2(t, 1) +
                b * (par.omega + (a + g * bad2) * lag_eps2(t, 2) + b * lag_h(t, 2));
            state_[t] = h;
            break;
        }
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw NumericalError(fmt::format("{}: conditional variance {} at index {} is not positive and finite",
                                         family_name(spec_.family), h, t));
    }
    h_[t] = h;
    return h;
}

// ---------------------------------------------------------------------------
// Transforms

namespace {

// c_k = exp(u_k) / (1 + sum exp(u)): positive, summing to < 1.
std::vector<double> softmax_slack(const double* u, std::size_t n) {
    double mx = 0.0;
    for (std::size_t k = 0; k < n; ++k) mx = std::max(mx, u[k]);
    double denom = std::exp(-mx);
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        c[k] = std::exp(u[k] - mx);
        denom += c[k];
    }
    for (double& x : c) x /= denom;
    return c;
}

void inverse_softmax_slack(const std::vector<double>& c, double* u) {
    constexpr double kFloor = 1e-8;
    std::vector<double> cc(c.size());
    double total = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        cc[k] = std::max(c[k], kFloor);
        total += cc[k];
    }
    const double slack = std::max(1.0 - total, kFloor);
    for (std::size_t k = 0; k < cc.size(); ++k) u[k] = std::log(cc[k] / slack);
}

// n components summing to exactly 1; the last has logit 0.
std::vector<double> softmax_unit(const double* u, std::size_t n) {
    std::vector<double> logits(u, u + (n - 1));
    logits.push_back(0.0);
    const double mx = *std::max_element(logits.begin(), logits.end());
    double denom = 0.0;
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        c[k] = std::exp(logits[k] - mx);
        denom += c[k];
    }
    for (double& x : c) x /= denom;
    return c;
}

void inverse_softmax_unit(const std::vector<double>& c, double* u) {
    constexpr double kFloor = 1e-8;
    const double last = std::max(c.back(), kFloor);
    for (std::size_t k = 0; k + 1 < c.size(); ++k) u[k] = std::log(std::max(c[k], kFloor) / last);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) {
    p = std::clamp(p, 1e-10, 1.0 - 1e-10);
    return std::log(p / (1.0 - p));
}

std::size_t mean_dimension(Family f) { return f == Family::GARCHM ? 3 : 2; }

}  // namespace

std::size_t unconstrained_dimension(const GarchSpec& spec) {
    const auto q = static_cast<std::size_t>(spec.q);
    const auto p = static_cast<std::size_t>(spec.p);
    const std::size_t mean = mean_dimension(spec.family);
    switch (spec.family) {
        case Family::GARCH:
        case Family::GARCHM:
            return mean + 1 + q + p;
        case Family::IGARCH:
            return mean + q + p;
        case Family::TGARCH:
        case Family::EGARCH:
            return mean + 1 + 2 * q + p;
        case Family::PGARCH:
            return mean + 2 + q + p;
        case Family::APGARCH:
            return mean + 2 + 2 * q + p;
        case Family::CGARCH:
            return mean + 5;
        case Family::CMTGARCH:
            return mean + 4;
    }
    return 0;
}

Eigen::VectorXd encode(const GarchSpec& spec, const GarchParams& par) {
    const auto q = static_cast<std::size_t>(spec.q);
    const auto p = static_cast<std::size_t>(spec.p);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(unconstrained_dimension(spec)));
    std::size_t k = 0;
    u[k++] = par.constant;
    u[k++] = par.ar1;
    if (spec.family == Family::GARCHM) u[k++] = par.in_mean;
    double* w = u.data() + k;

    auto concat = [](std::vector<double> a, const std::vector<double>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };

    switch (spec.family) {
        case Family::GARCH:
        case Family::GARCHM:
            w[0] = std::log(par.omega);
            inverse_softmax_slack(concat(par.alpha, par.beta), w + 1);
            break;
        case Family::IGARCH:
            w[0] = std::log(par.omega);
            inverse_softmax_unit(concat(par.alpha, par.beta), w + 1);
            break;
        case Family::TGARCH: {
            std::vector<double> c;
            for (double a : par.alpha) c.push_back(0.5 * a);
            for (std::size_t i = 0; i < q; ++i) c.push_back(0.5 * (par.alpha[i] + par.gamma[i]));
            c.insert(c.end(), par.beta.begin(), par.beta.end());
            w[0] = std::log(par.omega);
            inverse_softmax_slack(c, w + 1);
            break;
        }
        case Family::EGARCH:
            w[0] = par.omega;
            for (std::size_t i = 0; i < q; ++i) w[1 + i] = par.alpha[i];
            for (std::size_t i = 0; i < q; ++i) w[1 + q + i] = par.gamma[i];
            for (std::size_t j = 0; j < p; ++j) {
                w[1 + 2 * q + j] = std::atanh(std::clamp(par.beta[j] * static_cast<double>(p), -0.999999, 0.999999));
            }
            break;
        case Family::PGARCH: {
            const double kappa = abs_moment(par.power);
            std::vector<double> c;
            for (double a : par.alpha) c.push_back(kappa * a);
            c.insert(c.end(), par.beta.begin(), par.beta.end());
            w[0] = std::log(par.omega);
            inverse_softmax_slack(c, w + 1);
            w[1 + q + p] = std::log(par.power);
            break;
        }
        case Family::APGARCH: {
            std::vector<double> c;
            for (std::size_t i = 0; i < q; ++i) {
                c.push_back(par.alpha[i] * asymmetric_abs_moment(par.power, par.gamma[i]));
            }
            c.insert(c.end(), par.beta.begin(), par.beta.end());
            w[0] = std::log(par.omega);
            inverse_softmax_slack(c, w + 1);
            for (std::size_t i = 0; i < q; ++i) w[1 + q + p + i] = std::atanh(std::clamp(par.gamma[i], -0.999999, 0.999999));
            w[1 + 2 * q + p] = std::log(par.power);
            break;
        }
        case Family::CGARCH: {
            const double a = par.alpha[0], b = par.beta[0];
            w[0] = std::log(par.sigma_bar);
            inverse_softmax_slack({a, b}, w + 1);
            const double s = a + b;
            w[3] = logit((par.rho_c - s) / (1.0 - s));
            w[4] = logit(b > 0.0 ? par.component_loading / b : 0.0);
            break;
        }
        case Family::CMTGARCH:
            w[0] = std::log(par.omega);
            w[1] = std::log(std::max(par.alpha[0], 1e-8));
            w[2] = std::log(std::max(par.alpha[0] + par.gamma[0], 1e-8));
            w[3] = std::log(std::max(par.beta[0], 1e-8));
            break;
    }
    return u;
}

GarchParams decode(const GarchSpec& spec, const Eigen::VectorXd& u) {
    const auto q = static_cast<std::size_t>(spec.q);
    const auto p = static_cast<std::size_t>(spec.p);
    GarchParams par = GarchParams::zeros(spec);
    std::size_t k = 0;
    par.constant = u[k++];
    par.ar1 = u[k++];
    if (spec.family == Family::GARCHM) par.in_mean = u[k++];
    const double* w = u.data() + k;

    switch (spec.family) {
        case Family::GARCH:
        case Family::GARCHM:
        case Family::IGARCH: {
            par.omega = std::exp(w[0]);
            const auto c = spec.family == Family::IGARCH ? softmax_unit(w + 1, q + p)
                                                         : softmax_slack(w + 1, q + p);
            std::copy(c.begin(), c.begin() + static_cast<long>(q), par.alpha.begin());
            std::copy(c.begin() + static_cast<long>(q), c.end(), par.beta.begin());
            break;
        }
        case Family::TGARCH: {
            par.omega = std::exp(w[0]);
            const auto c = softmax_slack(w + 1, 2 * q + p);
            for (std::size_t i = 0; i < q; ++i) {
                par.alpha[i] = 2.0 * c[i];
                par.gamma[i] = 2.0 * c[q + i] - par.alpha[i];
            }
            for (std::size_t j = 0; j < p; ++j) par.beta[j] = c[2 * q + j];
            break;
        }
        case Family::EGARCH:
            par.omega = w[0];
            for (std::size_t i = 0; i < q; ++i) par.alpha[i] = w[1 + i];
            for (std::size_t i = 0; i < q; ++i) par.gamma[i] = w[1 + q + i];
            for (std::size_t j = 0; j < p; ++j) par.beta[j] = std::tanh(w[1 + 2 * q + j]) / static_cast<double>(p);
            break;
        case Family::PGARCH: {
            par.omega = std::exp(w[0]);
            par.power = std::exp(w[1 + q + p]);
            const double kappa = abs_moment(par.power);
            const auto c = softmax_slack(w + 1, q + p);
            for (std::size_t i = 0; i < q; ++i) par.alpha[i] = c[i] / kappa;
            for (std::size_t j = 0; j < p; ++j) par.beta[j] = c[q + j];
            break;
        }
        case Family::APGARCH: {
            par.omega = std::exp(w[0]);
            par.power = std::exp(w[1 + 2 * q + p]);
            const auto c = softmax_slack(w + 1, q + p);
            for (std::size_t i = 0; i < q; ++i) {
                par.gamma[i] = std::tanh(w[1 + q + p + i]);
                par.alpha[i] = c[i] / asymmetric_abs_moment(par.power, par.gamma[i]);
            }
            for (std::size_t j = 0; j < p; ++j) par.beta[j] = c[q + j];
            break;
        }
        case Family::CGARCH: {
            par.sigma_bar = std::exp(w[0]);
            const auto c = softmax_slack(w + 1, 2);
            par.alpha[0] = c[0];
            par.beta[0] = c[1];
            const double s = c[0] + c[1];
            par.rho_c = s + (1.0 - s) * logistic(w[3]);
            par.component_loading = c[1] * logistic(w[4]);
            break;
        }
        case Family::CMTGARCH:
            par.omega = std::exp(w[0]);
            par.alpha[0] = std::exp(w[1]);
            par.gamma[0] = std::exp(w[2]) - par.alpha[0];
            par.beta[0] = std::exp(w[3]);
            break;
    }
    return par;
}

GarchParams initial_params(const GarchSpec& spec, std::span<const double> returns) {
    const double n = static_cast<double>(returns.size());
    const double mean = std::accumulate(returns.begin(), returns.end(), 0.0) / n;
    double var = 0.0, cov1 = 0.0;
    for (std::size_t t = 0; t < returns.size(); ++t) {
        const double d = returns[t] - mean;
        var += d * d;
        if (t > 0) cov1 += d * (returns[t - 1] - mean);
    }
    const double acf1 = var > 0.0 ? cov1 / var : 0.0;
    var /= n;

    GarchParams par = GarchParams::zeros(spec);
    par.constant = mean;
    par.ar1 = acf1;
    const double qd = static_cast<double>(spec.q);
    const double pd = static_cast<double>(spec.p);
    std::fill(par.alpha.begin(), par.alpha.end(), 0.05 / qd);
    std::fill(par.beta.begin(), par.beta.end(), 0.85 / pd);
    par.power = has_power(spec.family) ? 2.0 : par.power;

    switch (spec.family) {
        case Family::IGARCH:
            std::fill(par.beta.begin(), par.beta.end(), 0.95 / pd);
            par.omega = 0.01 * var;
            break;
        case Family::EGARCH:
            par.omega = std::log(var) * (1.0 - 0.85);
            break;
        case Family::CGARCH:
            par.sigma_bar = var;
            par.rho_c = 0.95;
            par.component_loading = 0.02;
            break;
        case Family::CMTGARCH: {
            const double a = 0.05, b = 0.85;
            par.omega = var * (1.0 - (a + b * a + b * b)) / (1.0 + b);
            break;
        }
        default:
            par.omega = var * (1.0 - 0.9);
    }
    return par;
}

}  // namespace detail

}  // namespace volspill
