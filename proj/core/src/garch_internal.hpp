#pragma once

#include "volspill/garch.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace volspill::detail {

/// E|z|^phi for standard normal z.
double abs_moment(double phi);

/// E(|z| - gamma z)^phi for standard normal z.
double asymmetric_abs_moment(double phi, double gamma);

/// Step-at-a-time variance recursion. compute(t) reads residuals [0, t)
/// and fills variance[t]; callers may write residual t afterwards.
class VarianceFilter {
public:
    VarianceFilter(const GarchSpec& spec, const GarchParams& params, double initial_variance,
                   std::span<const double> residuals);

    double compute(std::size_t t);

    [[nodiscard]] const std::vector<double>& variance() const noexcept { return h_; }

private:
    double lag_eps(std::size_t t, int i) const;
    double lag_eps2(std::size_t t, int i) const;
    double lag_abs(std::size_t t, int i) const;
    double lag_h(std::size_t t, int j) const;
    double lag_state(std::size_t t, int j) const;
    double lag_z(std::size_t t, int i, bool& presample) const;

    const GarchSpec& spec_;
    const GarchParams& par_;
    double h0_;
    double state0_;
    std::span<const double> eps_;
    std::vector<double> h_;
    std::vector<double> state_;  // log h (EGARCH), sigma^phi (power), q_t (CGARCH)
};

/// Unconstrained coordinates <-> parameters. Mean coefficients come first.
std::size_t unconstrained_dimension(const GarchSpec& spec);
Eigen::VectorXd encode(const GarchSpec& spec, const GarchParams& params);
GarchParams decode(const GarchSpec& spec, const Eigen::VectorXd& u);

/// Starting values from the data (variance targeting).
GarchParams initial_params(const GarchSpec& spec, std::span<const double> returns);

}  // namespace volspill::detail
