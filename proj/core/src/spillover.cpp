#include "volspill/spillover.hpp"

#include "volspill/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace volspill {

VolatilityPanel VolatilityPanel::from_variances(std::vector<std::string> markets, std::vector<Date> dates,
                                                const std::vector<std::vector<double>>& variances,
                                                VolatilityTransform transform) {
    if (variances.size() != markets.size()) {
        throw InputError(fmt::format("{} markets but {} variance series", markets.size(), variances.size()));
    }
    const std::size_t t_len = dates.size();
    VolatilityPanel panel;
    panel.values.resize(static_cast<Eigen::Index>(t_len), static_cast<Eigen::Index>(markets.size()));
    for (std::size_t m = 0; m < markets.size(); ++m) {
        if (variances[m].size() != t_len) {
            throw InputError(fmt::format("variance series for {} has {} values for {} dates", markets[m],
                                         variances[m].size(), t_len));
        }
        for (std::size_t t = 0; t < t_len; ++t) {
            const double v = variances[m][t];
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw InputError(fmt::format("conditional variance for {} at index {} is not positive", markets[m], t));
            }
            panel.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(m)) =
                transform == VolatilityTransform::Log ? std::log(v) : v;
        }
    }
    panel.markets = std::move(markets);
    panel.dates = std::move(dates);
    panel.transform = transform;
    return panel;
}

void VolatilityPanel::validate() const {
    if (static_cast<std::size_t>(values.cols()) != markets.size()) {
        throw InputError(fmt::format("volatility panel has {} columns for {} markets", values.cols(), markets.size()));
    }
    if (!dates.empty() && static_cast<std::size_t>(values.rows()) != dates.size()) {
        throw InputError("volatility panel rows do not match dates");
    }
    if (!values.allFinite()) throw InputError("volatility panel contains non-finite values");
    if (transform == VolatilityTransform::Raw && values.size() > 0 && !(values.minCoeff() > 0.0)) {
        throw InputError("raw volatility panel must be strictly positive");
    }
}

namespace {

VarModel fit_var_impl(const Eigen::MatrixXd& data, int lags, std::size_t start,
                      const std::vector<std::string>* names) {
    const Eigen::Index total = data.rows();
    const Eigen::Index n = data.cols();
    if (lags < 1) throw InputError(fmt::format("VAR lag order must be >= 1, got {}", lags));
    if (n < 1) throw InputError("VAR needs at least one series");
    if (start < static_cast<std::size_t>(lags)) {
        throw InputError(fmt::format("VAR sample start {} is before lag order {}", start, lags));
    }
    const Eigen::Index t_eff = total - static_cast<Eigen::Index>(start);
    const Eigen::Index k = 1 + n * lags;
    if (t_eff <= n * lags + 10) {
        throw InputError(fmt::format("VAR({}) on {} series needs more than {} observations, got {}", lags, n,
                                     n * lags + 10, t_eff));
    }
    if (!data.allFinite()) throw InputError("VAR data contains non-finite values");

    Eigen::MatrixXd x(t_eff, k);
    Eigen::MatrixXd y(t_eff, n);
    for (Eigen::Index r = 0; r < t_eff; ++r) {
        const Eigen::Index t = static_cast<Eigen::Index>(start) + r;
        y.row(r) = data.row(t);
        x(r, 0) = 1.0;
        for (int lag = 1; lag <= lags; ++lag) {
            x.block(r, 1 + (lag - 1) * n, 1, n) = data.row(t - lag);
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        auto column_name = [&](Eigen::Index c) -> std::string {
            if (c == 0) return "intercept";
            const Eigen::Index var = (c - 1) % n;
            const Eigen::Index lag = (c - 1) / n + 1;
            const std::string who = names ? (*names)[static_cast<std::size_t>(var)] : fmt::format("series{}", var);
            return fmt::format("{}(lag {})", who, lag);
        };
        std::string cols;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index c = qr.rank(); c < k; ++c) {
            cols += (cols.empty() ? "" : ", ") + column_name(perm[c]);
        }
        throw NumericalError(fmt::format("VAR({}) regressor matrix is rank deficient; collinear columns: {}", lags, cols));
    }
    const Eigen::MatrixXd b = qr.solve(y);
    const Eigen::MatrixXd resid = y - x * b;

    VarModel model;
    model.lag_order = lags;
    model.observations = static_cast<std::size_t>(t_eff);
    model.residuals = resid;
    model.intercepts = b.row(0).transpose();
    const Eigen::MatrixXd cross = resid.transpose() * resid;
    model.sigma = cross / static_cast<double>(t_eff - k);
    model.sigma = 0.5 * (model.sigma + model.sigma.transpose()).eval();

    const Eigen::MatrixXd xtx_inv = (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    for (int lag = 1; lag <= lags; ++lag) {
        Eigen::MatrixXd phi(n, n), se(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const Eigen::Index row = 1 + (lag - 1) * n + j;
                phi(i, j) = b(row, i);
                se(i, j) = std::sqrt(std::max(0.0, model.sigma(i, i) * xtx_inv(row, row)));
            }
        }
        model.coefficients.push_back(phi);
        model.coefficient_std_errors.push_back(se);
    }

    const Eigen::MatrixXd sigma_ml = cross / static_cast<double>(t_eff);
    const double det = sigma_ml.determinant();
    model.aic = (det > 0.0 ? std::log(det) : -std::numeric_limits<double>::infinity()) +
                2.0 * static_cast<double>(n * n * lags + n) / static_cast<double>(t_eff);

    const Eigen::Index dim = n * lags;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(dim, dim);
    for (int lag = 0; lag < lags; ++lag) companion.block(0, lag * n, n, n) = model.coefficients[lag];
    if (lags > 1) companion.block(n, 0, dim - n, dim - n).setIdentity();
    const Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    model.spectral_radius = es.eigenvalues().cwiseAbs().maxCoeff();
    model.stable = model.spectral_radius < 1.0;
    return model;
}

}  // namespace

VarModel fit_var(const Eigen::MatrixXd& data, int lags, std::optional<std::size_t> sample_start) {
    return fit_var_impl(data, lags, sample_start.value_or(static_cast<std::size_t>(std::max(lags, 0))), nullptr);
}

VarModel fit_var(const VolatilityPanel& panel, int lags) {
    panel.validate();
    return fit_var_impl(panel.values, lags, static_cast<std::size_t>(std::max(lags, 0)), &panel.markets);
}

namespace {

int select_var_lag_impl(const Eigen::MatrixXd& data, int max_lag, const std::vector<std::string>* names) {
    if (max_lag < 1) throw InputError(fmt::format("maximum VAR lag must be >= 1, got {}", max_lag));
    // Every candidate shares the sample after max_lag, so the longest lag
    // decides whether the window is long enough.
    const Eigen::Index n = data.cols();
    const Eigen::Index t_eff = data.rows() - max_lag;
    if (t_eff <= n * max_lag + 10) {
        throw InputError(fmt::format("{} observations are too few for VAR lag selection up to {} on {} series "
                                     "(need more than {})",
                                     data.rows(), max_lag, n, n * max_lag + 10 + max_lag));
    }
    if (max_lag == 1) return 1;
    int best = 1;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int lag = 1; lag <= max_lag; ++lag) {
        const VarModel m = fit_var_impl(data, lag, static_cast<std::size_t>(max_lag), names);
        if (m.aic < best_aic) {
            best_aic = m.aic;
            best = lag;
        }
    }
    return best;
}

}  // namespace

int select_var_lag(const Eigen::MatrixXd& data, int max_lag) { return select_var_lag_impl(data, max_lag, nullptr); }

int select_var_lag(const VolatilityPanel& panel, int max_lag) {
    panel.validate();
    return select_var_lag_impl(panel.values, max_lag, &panel.markets);
}

std::vector<Eigen::MatrixXd> ma_coefficients(const std::vector<Eigen::MatrixXd>& phi, int horizon) {
    if (horizon < 1) throw InputError(fmt::format("horizon must be >= 1, got {}", horizon));
    if (phi.empty()) throw InputError("VAR has no coefficient matrices");
    const Eigen::Index n = phi.front().rows();
    std::vector<Eigen::MatrixXd> a;
    a.reserve(static_cast<std::size_t>(horizon));
    a.push_back(Eigen::MatrixXd::Identity(n, n));
    const int p = static_cast<int>(phi.size());
    for (int h = 1; h < horizon; ++h) {
        Eigen::MatrixXd ah = Eigen::MatrixXd::Zero(n, n);
        for (int k = 1; k <= std::min(h, p); ++k) ah += phi[static_cast<std::size_t>(k - 1)] * a[static_cast<std::size_t>(h - k)];
        a.push_back(std::move(ah));
    }
    return a;
}

std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int horizon) {
    return ma_coefficients(model.coefficients, horizon);
}

Eigen::MatrixXd generalized_fevd(const std::vector<Eigen::MatrixXd>& ma, const Eigen::MatrixXd& sigma) {
    if (ma.empty()) throw InputError("generalized FEVD needs at least one MA coefficient");
    const Eigen::Index n = sigma.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!(sigma(j, j) > 0.0)) {
            throw NumericalError(fmt::format("residual variance of series {} is {}; FEVD undefined", j, sigma(j, j)));
        }
    }
    Eigen::MatrixXd num = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd den = Eigen::VectorXd::Zero(n);
    for (const auto& a : ma) {
        const Eigen::MatrixXd as = a * sigma;
        num += as.cwiseAbs2();
        den += (as * a.transpose()).diagonal();
    }
    Eigen::MatrixXd theta(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) theta(i, j) = num(i, j) / sigma(j, j) / den(i);
    }
    for (Eigen::Index i = 0; i < n; ++i) theta.row(i) *= 100.0 / theta.row(i).sum();
    return theta;
}

Eigen::MatrixXd generalized_fevd(const VarModel& model, int horizon) {
    return generalized_fevd(ma_coefficients(model, horizon), model.sigma);
}

Eigen::VectorXd SpilloverTable::from_others_share() const {
    return from_others / static_cast<double>(markets.size());
}

Eigen::VectorXd SpilloverTable::to_others_share() const {
    return to_others / static_cast<double>(markets.size());
}

SpilloverTable aggregate_spillovers(std::vector<std::string> markets, Eigen::MatrixXd matrix, int horizon,
                                    int lag_order) {
    const Eigen::Index n = matrix.rows();
    if (matrix.cols() != n || static_cast<std::size_t>(n) != markets.size()) {
        throw InputError("spillover matrix must be square with one row per market");
    }
    SpilloverTable table;
    table.markets = std::move(markets);
    table.horizon = horizon;
    table.lag_order = lag_order;
    const Eigen::VectorXd diag = matrix.diagonal();
    table.from_others = matrix.rowwise().sum() - diag;
    table.to_others = matrix.colwise().sum().transpose() - diag;
    table.net = table.to_others - table.from_others;
    table.includes_own = table.to_others + diag;
    table.total_index = (matrix.sum() - diag.sum()) / static_cast<double>(n);
    table.matrix = std::move(matrix);
    return table;
}

SpilloverTable spillover_table(const VolatilityPanel& panel, int lags, int horizon) {
    if (panel.size() < 2) throw InputError("spillover analysis needs at least two markets");
    const VarModel model = fit_var(panel, lags);
    return aggregate_spillovers(panel.markets, generalized_fevd(model, horizon), horizon, lags);
}

SpilloverTable spillover_table(const VolatilityPanel& panel, const SpilloverConfig& cfg) {
    if (cfg.horizon < 1) throw InputError(fmt::format("horizon must be >= 1, got {}", cfg.horizon));
    const int lags = cfg.fixed_lag ? *cfg.fixed_lag : select_var_lag(panel, cfg.max_lag);
    return spillover_table(panel, lags, cfg.horizon);
}

Eigen::VectorXd net_directional(const SpilloverTable& table) { return table.to_others - table.from_others; }

}  // namespace volspill
