#include "volspill/garch.hpp"

#include <benchmark/benchmark.h>

using namespace volspill;

namespace {

std::vector<double> sample(std::size_t n) {
    GarchParams p = GarchParams::zeros({Family::GARCH, 1, 1});
    p.omega = 0.1;
    p.alpha[0] = 0.1;
    p.beta[0] = 0.8;
    return simulate({Family::GARCH, 1, 1}, p, n, 1).values;
}

void BM_Fit(benchmark::State& state) {
    const auto family = static_cast<Family>(state.range(0));
    const auto r = sample(static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(fit({family, 1, 1}, r));
    state.SetLabel(std::string(family_name(family)));
}

void BM_SelectAllFamilies(benchmark::State& state) {
    const auto r = sample(static_cast<std::size_t>(state.range(0)));
    std::vector<GarchSpec> cands;
    for (Family f : all_families()) cands.push_back({f, 1, 1});
    for (auto _ : state) benchmark::DoNotOptimize(select_model(cands, r));
}

}  // namespace

BENCHMARK(BM_Fit)
    ->ArgsProduct({{static_cast<int>(Family::GARCH), static_cast<int>(Family::EGARCH), static_cast<int>(Family::TGARCH),
                    static_cast<int>(Family::CMTGARCH)},
                   {428, 2000}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelectAllFamilies)->Arg(428)->Unit(benchmark::kMillisecond);
