#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace volspill::optim {

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Central-difference gradient with relative step. Non-finite objective
/// values at a probe point fall back to a one-sided difference.
Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x);

/// Central-difference Hessian.
Eigen::MatrixXd numerical_hessian(const Objective& f, const Eigen::VectorXd& x);

struct BfgsOptions {
    int max_iterations = 500;
    double relative_tolerance = 1e-8;
    double gradient_tolerance = 1e-6;
    /// Gradient inf-norm under which a stalled line search still counts as
    /// convergence.
    double stall_gradient_tolerance = 1e-3;
};

struct BfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double gradient_norm = 0.0;
    std::string message;
};

/// Minimizes f with BFGS and Armijo backtracking on finite-difference
/// gradients. f may return +inf to reject a point; the start must be finite.
BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& opts = {});

}  // namespace volspill::optim
