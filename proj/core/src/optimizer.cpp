#include "volspill/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace volspill::optim {

namespace {

double fd_step(double x, double rel) { return rel * std::max(1.0, std::abs(x)); }

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x) {
    const double f0 = f(x);
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = fd_step(x[i], 6e-6);
        probe[i] = x[i] + h;
        const double fp = f(probe);
        probe[i] = x[i] - h;
        const double fm = f(probe);
        probe[i] = x[i];
        if (std::isfinite(fp) && std::isfinite(fm)) {
            g[i] = (fp - fm) / (2.0 * h);
        } else if (std::isfinite(fp)) {
            g[i] = (fp - f0) / h;
        } else if (std::isfinite(fm)) {
            g[i] = (f0 - fm) / h;
        } else {
            g[i] = 0.0;
        }
    }
    return g;
}

Eigen::MatrixXd numerical_hessian(const Objective& f, const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size();
    Eigen::MatrixXd hess(n, n);
    Eigen::VectorXd h(n);
    for (Eigen::Index i = 0; i < n; ++i) h[i] = fd_step(x[i], 1e-4);
    const double f0 = f(x);
    Eigen::VectorXd p = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        p[i] = x[i] + h[i];
        const double fp = f(p);
        p[i] = x[i] - h[i];
        const double fm = f(p);
        p[i] = x[i];
        hess(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (Eigen::Index j = 0; j < i; ++j) {
            p[i] = x[i] + h[i];
            p[j] = x[j] + h[j];
            const double fpp = f(p);
            p[j] = x[j] - h[j];
            const double fpm = f(p);
            p[i] = x[i] - h[i];
            const double fmm = f(p);
            p[j] = x[j] + h[j];
            const double fmp = f(p);
            p[i] = x[i];
            p[j] = x[j];
            hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
        }
    }
    return hess;
}

BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& opts) {
    BfgsResult res;
    const Eigen::Index n = x0.size();
    Eigen::VectorXd x = std::move(x0);
    double fx = f(x);
    if (!std::isfinite(fx)) {
        res.x = x;
        res.value = fx;
        res.message = "objective is not finite at the starting point";
        return res;
    }
    Eigen::VectorXd g = numerical_gradient(f, x);
    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
    bool fresh = true;
    constexpr double kArmijo = 1e-4;
    constexpr double kMaxStep = 5.0;

    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        if (inf_norm(g) < opts.gradient_tolerance) {
            res.converged = true;
            res.message = "gradient tolerance reached";
            break;
        }
        Eigen::VectorXd dir = -hinv * g;
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            hinv.setIdentity();
            fresh = true;
            dir = -g;
            slope = -g.squaredNorm();
        }
        const double longest = inf_norm(dir);
        double step = longest > kMaxStep ? kMaxStep / longest : 1.0;

        Eigen::VectorXd x_new;
        double f_new = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            x_new = x + step * dir;
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= fx + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (!fresh) {
                hinv.setIdentity();
                fresh = true;
                continue;
            }
            res.gradient_norm = inf_norm(g);
            res.converged = res.gradient_norm < opts.stall_gradient_tolerance;
            res.message = "line search stalled";
            break;
        }

        Eigen::VectorXd g_new = numerical_gradient(f, x_new);
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (fresh) {
                hinv *= sy / y.squaredNorm();
                fresh = false;
            }
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
            hinv = (eye - rho * s * y.transpose()) * hinv * (eye - rho * y * s.transpose()) +
                   rho * s * s.transpose();
        }
        const double rel = std::abs(fx - f_new) / std::max(1.0, std::abs(fx));
        x = std::move(x_new);
        fx = f_new;
        g = std::move(g_new);
        if (rel < opts.relative_tolerance) {
            ++iter;
            res.converged = true;
            res.message = "relative improvement tolerance reached";
            break;
        }
    }
    if (iter >= opts.max_iterations && res.message.empty()) {
        res.message = "iteration limit reached";
    }
    res.x = std::move(x);
    res.value = fx;
    res.iterations = iter;
    res.gradient_norm = inf_norm(g);
    return res;
}

}  // namespace volspill::optim
