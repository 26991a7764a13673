#include "volspill/spillover.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace volspill;

namespace {

Eigen::MatrixXd stable_phi(Eigen::Index n, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = u(gen);
    return m * (0.8 / m.eigenvalues().cwiseAbs().maxCoeff());
}

void BM_GeneralizedFevd(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const int h = static_cast<int>(state.range(1));
    std::mt19937_64 gen(3);
    const std::vector<Eigen::MatrixXd> phi{stable_phi(n, gen)};
    const Eigen::MatrixXd l = Eigen::MatrixXd::Random(n, n);
    const Eigen::MatrixXd sigma = l * l.transpose() + Eigen::MatrixXd::Identity(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(generalized_fevd(ma_coefficients(phi, h), sigma));
}

void BM_FitVar(benchmark::State& state) {
    const Eigen::Index n = 7;
    const auto t = static_cast<Eigen::Index>(state.range(0));
    std::mt19937_64 gen(5);
    std::normal_distribution<double> z;
    const Eigen::MatrixXd phi = stable_phi(n, gen);
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(t, n);
    for (Eigen::Index s = 1; s < t; ++s) {
        y.row(s) = y.row(s - 1) * phi.transpose();
        for (Eigen::Index i = 0; i < n; ++i) y(s, i) += z(gen);
    }
    for (auto _ : state) benchmark::DoNotOptimize(fit_var(y, 2));
}

}  // namespace

BENCHMARK(BM_GeneralizedFevd)->ArgsProduct({{5, 7, 20}, {1, 10, 50}});
BENCHMARK(BM_FitVar)->Arg(428)->Arg(4000)->Unit(benchmark::kMicrosecond);
