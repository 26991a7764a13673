#pragma once

#include "volspill/data.hpp"
#include "volspill/optimizer.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace volspill {

/// Conditional-variance families. Enumeration order is the tie-break order
/// used by model selection.
enum class Family {
    GARCH,
    EGARCH,
    TGARCH,
    IGARCH,
    PGARCH,
    APGARCH,
    GARCHM,
    CGARCH,
    CMTGARCH,
};

std::string_view family_name(Family f) noexcept;
std::optional<Family> parse_family(std::string_view name);
const std::vector<Family>& all_families();

/// Families whose variance equation carries a leverage coefficient gamma.
bool has_leverage(Family f) noexcept;

struct GarchSpec {
    Family family = Family::GARCH;
    int p = 1;  ///< lagged variances
    int q = 1;  ///< lagged shocks

    /// p, q >= 1; CGARCH and CMTGARCH are fixed at p = q = 1.
    void validate() const;
    [[nodiscard]] std::string label() const;

    friend bool operator==(const GarchSpec&, const GarchSpec&) = default;
};

/// Mean and variance coefficients. Unused fields stay at their defaults.
struct GarchParams {
    // Mean equation: r_t = constant + ar1 * r_{t-1} (+ in_mean * sigma_t^2).
    double constant = 0.0;
    double ar1 = 0.0;
    double in_mean = 0.0;

    double omega = 0.0;
    std::vector<double> alpha;  ///< size q
    std::vector<double> beta;   ///< size p
    std::vector<double> gamma;  ///< size q for leverage families, else empty
    double power = 2.0;         ///< PGARCH / APGARCH exponent

    // Component GARCH: q_t = sigma_bar + rho_c (q_{t-1} - sigma_bar)
    //                        + component_loading (eps_{t-1}^2 - sigma_{t-1}^2)
    double rho_c = 0.0;
    double component_loading = 0.0;
    double sigma_bar = 0.0;

    /// Correctly sized, all-zero coefficients for the spec.
    static GarchParams zeros(const GarchSpec& spec);
};

/// Empty string when admissible, otherwise the first violated constraint.
std::string admissibility_violation(const GarchSpec& spec, const GarchParams& params);
bool is_admissible(const GarchSpec& spec, const GarchParams& params);

/// The moment-stationarity quantity of the family (< 1 means a finite
/// unconditional variance; for EGARCH, sum |beta|).
double stationarity_measure(const GarchSpec& spec, const GarchParams& params);

/// Unconditional variance of a stationary parameterization.
double unconditional_variance(const GarchSpec& spec, const GarchParams& params);

/// sigma_t^2 for each residual. sigma_1^2 = initial_variance; pre-sample
/// lags use initial_variance for squared shocks and variances and carry no
/// sign or standardized-shock information.
std::vector<double> variance_recursion(const GarchSpec& spec, const GarchParams& params,
                                       std::span<const double> residuals,
                                       double initial_variance);

/// Same, with initial_variance = mean of squared residuals.
std::vector<double> variance_recursion(const GarchSpec& spec, const GarchParams& params,
                                       std::span<const double> residuals);

/// Residual variance of the OLS fit r_t = c + rho r_{t-1}; the pre-sample
/// variance used by the likelihood.
double presample_variance(std::span<const double> returns);

struct LogLikelihood {
    double value = 0.0;                 ///< nats, summed over t = 2..n
    std::vector<double> cond_variance;  ///< length n - 1
    std::vector<double> residuals;      ///< length n - 1
};

LogLikelihood log_likelihood(const GarchSpec& spec, const GarchParams& params,
                             std::span<const double> returns);
LogLikelihood log_likelihood(const GarchSpec& spec, const GarchParams& params,
                             std::span<const double> returns, double initial_variance);
LogLikelihood log_likelihood(const GarchSpec& spec, const GarchParams& params,
                             const ReturnSeries& returns);

/// Names and values of the free parameters, mean equation first.
std::vector<std::string> parameter_names(const GarchSpec& spec);
std::vector<double> parameter_values(const GarchSpec& spec, const GarchParams& params);
GarchParams params_from_values(const GarchSpec& spec, std::span<const double> values);
std::size_t free_parameter_count(const GarchSpec& spec);

/// Mean negative log-likelihood in the unconstrained coordinates the
/// optimizer works in. Inadmissible or failing points evaluate to +inf.
class GarchObjective {
public:
    GarchObjective(GarchSpec spec, std::span<const double> returns);

    double operator()(const Eigen::VectorXd& u) const;

    [[nodiscard]] std::size_t dimension() const;
    [[nodiscard]] Eigen::VectorXd initial_point() const;
    [[nodiscard]] GarchParams decode(const Eigen::VectorXd& u) const;
    [[nodiscard]] Eigen::VectorXd encode(const GarchParams& params) const;
    [[nodiscard]] double initial_variance() const noexcept { return h0_; }
    [[nodiscard]] std::size_t observations() const noexcept { return returns_.size() - 1; }

private:
    GarchSpec spec_;
    std::vector<double> returns_;
    double h0_ = 0.0;
};

struct GarchFit {
    GarchSpec spec;
    GarchParams params;
    std::vector<double> cond_variance;
    std::vector<double> residuals;
    std::vector<double> std_residuals;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double persistence = 0.0;
    std::optional<double> leverage;
    std::optional<double> asymmetry_degree;
    std::vector<std::string> param_names;
    std::vector<double> param_values;
    std::vector<double> std_errors;  ///< NaN when the Hessian is not invertible
    std::vector<double> p_values;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;
    std::string message;

    [[nodiscard]] std::size_t free_parameters() const noexcept { return param_names.size(); }
};

struct FitOptions {
    optim::BfgsOptions bfgs{};
    bool compute_std_errors = true;
};

/// Gaussian QMLE. Throws InputError for short or non-finite series; a
/// stalled optimizer yields converged = false instead of throwing.
GarchFit fit(const GarchSpec& spec, std::span<const double> returns, const FitOptions& opts = {});
GarchFit fit(const GarchSpec& spec, const ReturnSeries& returns, const FitOptions& opts = {});

double aic(double log_likelihood, std::size_t free_parameters);
double aic(const GarchFit& fit);

struct CandidateOutcome {
    GarchSpec spec;
    std::optional<GarchFit> fit;
    std::string failure;  ///< empty when fit is present and converged
};

std::vector<CandidateOutcome> fit_candidates(const std::vector<GarchSpec>& candidates,
                                             std::span<const double> returns,
                                             const FitOptions& opts = {});

/// Minimal AIC among converged fits; ties go to fewer parameters, then to
/// the earlier family. Throws NumericalError listing every failure when no
/// candidate converged.
const GarchFit& select_best(const std::vector<CandidateOutcome>& outcomes);

GarchFit select_model(const std::vector<GarchSpec>& candidates, std::span<const double> returns,
                      const FitOptions& opts = {});

/// sum(alpha) + sum(beta) + 0.5 sum(gamma).
double persistence(const GarchSpec& spec, const GarchParams& params);
double persistence(const GarchFit& fit);

/// (alpha_1 + gamma_1) / alpha_1; absent without gamma or when alpha_1 = 0.
std::optional<double> asymmetry_degree(const GarchSpec& spec, const GarchParams& params);
std::optional<double> asymmetry_degree(const GarchFit& fit);

/// Simulated returns r_t = C + rho r_{t-1} (+ lambda sigma_t^2) + sigma_t z_t
/// started from the unconditional variance (IGARCH: omega / 0.01).
ReturnSeries simulate(const GarchSpec& spec, const GarchParams& params, std::size_t n,
                      std::uint64_t seed);

}  // namespace volspill
