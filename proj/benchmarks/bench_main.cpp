#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "colsel/bounds.hpp"
#include "colsel/harness.hpp"
#include "colsel/matrix.hpp"
#include "colsel/rng.hpp"
#include "colsel/secular.hpp"
#include "colsel/selection.hpp"
#include "colsel/spectrum.hpp"

namespace {

colsel::Mat random_psd(std::size_t n, std::uint64_t seed) {
    colsel::Rng rng(seed);
    colsel::Mat g(n, n);
    for (double& v : g.data) v = rng.gaussian();
    colsel::Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += g(i, k) * g(j, k);
            a(i, j) = s / static_cast<double>(n);
            a(j, i) = a(i, j);
        }
    return a;
}

void BM_SymEigen(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const colsel::Mat a = random_psd(n, 1);
    for (auto _ : state) {
        auto spec = colsel::sym_eigen(a);
        benchmark::DoNotOptimize(spec.values.data());
    }
}

void BM_Coherence(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const colsel::ColumnMatrix x = colsel::gen_gaussian(100, p, 2);
    for (auto _ : state) {
        double mu = colsel::coherence(x);
        benchmark::DoNotOptimize(mu);
    }
}

void BM_GreedyExact(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const colsel::ColumnMatrix x = colsel::gen_gaussian(100, p, 3);
    colsel::SelectionConfig cfg;
    cfg.epsilon = 0.5;
    cfg.max_cols = 10;
    cfg.seed = 3;
    cfg.mode = colsel::SelectionMode::exact;
    for (auto _ : state) {
        auto trace = colsel::greedy_select(x, cfg);
        benchmark::DoNotOptimize(trace.final_T.data());
    }
}

void BM_GreedyCertificate(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const colsel::ColumnMatrix x = colsel::gen_gaussian(100, p, 3);
    colsel::SelectionConfig cfg;
    cfg.epsilon = 0.5;
    cfg.max_cols = 10;
    cfg.seed = 3;
    cfg.mode = colsel::SelectionMode::certificate;
    for (auto _ : state) {
        auto trace = colsel::greedy_select(x, cfg);
        benchmark::DoNotOptimize(trace.final_T.data());
    }
}

void BM_SecularRoot(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const colsel::ColumnMatrix x = colsel::gen_gaussian(n, 2 * n, 4);
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < n / 2; ++i) t.push_back(i);
    colsel::Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k : t) s += x.entry(i, k) * x.entry(j, k);
            a(i, j) = s;
            a(j, i) = s;
        }
    const colsel::SymSpectrum sa = colsel::sym_eigen(a);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = x.entry(i, n);
    const colsel::SecularFunction f = colsel::make_secular(sa, v);
    const double lambda_lo = sa.values[t.size() - 1];
    for (auto _ : state) {
        double root = colsel::secular_smallest_root(f, lambda_lo);
        benchmark::DoNotOptimize(root);
    }
}

void BM_LeverageSelect(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const colsel::ColumnMatrix x = colsel::gen_gaussian(100, p, 5);
    for (auto _ : state) {
        auto r = colsel::leverage_select(x, 10, 10);
        benchmark::DoNotOptimize(r.selected.data());
    }
}

}  // namespace

BENCHMARK(BM_SymEigen)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_Coherence)->Arg(200)->Arg(1000);
BENCHMARK(BM_GreedyExact)->Arg(500)->Arg(1000);
BENCHMARK(BM_GreedyCertificate)->Arg(500)->Arg(1000);
BENCHMARK(BM_SecularRoot)->Arg(32)->Arg(128);
BENCHMARK(BM_LeverageSelect)->Arg(500);

BENCHMARK_MAIN();
