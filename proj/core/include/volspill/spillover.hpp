#pragma once

#include "volspill/date.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace volspill {

enum class VolatilityTransform { Log, Raw };

/// Volatility series aligned on dates; values is T x N, one column per
/// market, already transformed as recorded in `transform`.
struct VolatilityPanel {
    std::vector<std::string> markets;
    std::vector<Date> dates;
    Eigen::MatrixXd values;
    VolatilityTransform transform = VolatilityTransform::Raw;

    /// Builds a panel from conditional variances (strictly positive). Log
    /// mode stores ln sigma^2.
    static VolatilityPanel from_variances(std::vector<std::string> markets, std::vector<Date> dates,
                                          const std::vector<std::vector<double>>& variances,
                                          VolatilityTransform transform);

    void validate() const;
    [[nodiscard]] std::size_t observations() const noexcept {
        return static_cast<std::size_t>(values.rows());
    }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

struct VarModel {
    int lag_order = 1;
    Eigen::VectorXd intercepts;
    std::vector<Eigen::MatrixXd> coefficients;  ///< Phi_1 .. Phi_P, each N x N
    /// Standard errors of coefficients[k](i, j), same layout.
    std::vector<Eigen::MatrixXd> coefficient_std_errors;
    Eigen::MatrixXd sigma;  ///< residual covariance, divisor T - N P - 1
    Eigen::MatrixXd residuals;
    std::size_t observations = 0;  ///< effective sample T
    double aic = 0.0;              ///< ln det(ML sigma) + 2 (N^2 P + N) / T
    double spectral_radius = 0.0;
    bool stable = true;  ///< companion spectral radius < 1

    [[nodiscard]] int size() const noexcept { return static_cast<int>(intercepts.size()); }
};

/// Equation-by-equation least squares on rows [sample_start, T) of `data`
/// (T x N). sample_start defaults to `lags`; must be >= lags.
VarModel fit_var(const Eigen::MatrixXd& data, int lags, std::optional<std::size_t> sample_start = {});
VarModel fit_var(const VolatilityPanel& panel, int lags);

/// Lag with minimal AIC over 1..max_lag, all candidates on the sample that
/// starts after max_lag observations.
int select_var_lag(const Eigen::MatrixXd& data, int max_lag);
int select_var_lag(const VolatilityPanel& panel, int max_lag);

/// A_0 = I, A_h = sum_{k=1}^{min(h,P)} Phi_k A_{h-k}; returns A_0..A_{H-1}.
std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int horizon);
std::vector<Eigen::MatrixXd> ma_coefficients(const std::vector<Eigen::MatrixXd>& phi, int horizon);

/// Generalized (order-invariant) forecast-error variance decomposition,
/// rows normalized and expressed in percent.
Eigen::MatrixXd generalized_fevd(const std::vector<Eigen::MatrixXd>& ma, const Eigen::MatrixXd& sigma);
Eigen::MatrixXd generalized_fevd(const VarModel& model, int horizon);

struct SpilloverTable {
    std::vector<std::string> markets;
    Eigen::MatrixXd matrix;  ///< D(i, j): % of i's forecast-error variance due to j
    Eigen::VectorXd from_others;
    Eigen::VectorXd to_others;
    Eigen::VectorXd net;
    Eigen::VectorXd includes_own;
    double total_index = 0.0;
    int horizon = 1;
    int lag_order = 0;

    /// from/to divided by N: each market's share of the total index.
    [[nodiscard]] Eigen::VectorXd from_others_share() const;
    [[nodiscard]] Eigen::VectorXd to_others_share() const;
};

/// Directional aggregates of a row-normalized percent matrix.
SpilloverTable aggregate_spillovers(std::vector<std::string> markets, Eigen::MatrixXd matrix,
                                    int horizon, int lag_order = 0);

SpilloverTable spillover_table(const VolatilityPanel& panel, int lags, int horizon);

struct SpilloverConfig {
    int max_lag = 6;
    int horizon = 1;
    VolatilityTransform transform = VolatilityTransform::Log;
    std::optional<int> fixed_lag;
};

/// Lag chosen by AIC unless cfg.fixed_lag is set.
SpilloverTable spillover_table(const VolatilityPanel& panel, const SpilloverConfig& cfg);

/// to_others - from_others.
Eigen::VectorXd net_directional(const SpilloverTable& table);

}  // namespace volspill
