// Serial reference vs OpenMP paths for the hot kernels. Thread count comes
// from OMP_NUM_THREADS; on one core the two columns should match closely.

#include "fss/evaluators.hpp"
#include "fss/harness.hpp"
#include "fss/ridge.hpp"
#include "fss/rng.hpp"
#include "fss/search.hpp"

#include <benchmark/benchmark.h>

using namespace fss;

namespace {

Matrix uniform_matrix(Index rows, Index cols, std::uint64_t seed)
{
    Engine eng(seed);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = uniform01(eng);
        }
    }
    return m;
}

std::vector<int> folds_for(std::size_t n)
{
    std::vector<int> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = static_cast<int>(i % 10);
    }
    return f;
}

// ISBSG-sized training split: 374 rows x 82 features.
void BM_KernelMatrixSerial(benchmark::State& state)
{
    const Matrix x = uniform_matrix(state.range(0), 82, 1);
    const KernelConfig cfg{KernelKind::rbf, 3.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::kernel_matrix(x, x, cfg));
    }
}

void BM_KernelMatrixParallel(benchmark::State& state)
{
    const Matrix x = uniform_matrix(state.range(0), 82, 1);
    const KernelConfig cfg{KernelKind::rbf, 3.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_matrix(x, x, cfg));
    }
}

void cv_bench(benchmark::State& state, Execution exec)
{
    const auto n = state.range(0);
    const Matrix x = uniform_matrix(n, 82, 2);
    const Vector z = Vector::Ones(n) + x.col(0) * 3.0;
    const auto folds = folds_for(static_cast<std::size_t>(n));
    const auto all = FeatureSubset::full(82);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cv_score(x, z, all, folds, RidgeConfig::isbsg_defaults(), {}, exec));
    }
}

void BM_CvScoreSerial(benchmark::State& state) { cv_bench(state, Execution::serial); }
void BM_CvScoreParallel(benchmark::State& state) { cv_bench(state, Execution::parallel); }

// One forward-selection run on Desharnais-sized data (62 x 8); candidate
// subsets are scored concurrently under Execution::parallel.
void forward_bench(benchmark::State& state, Execution exec)
{
    const Matrix x = uniform_matrix(62, 8, 3);
    const Vector z = Vector::Ones(62) + x.col(2) * 2.0 + x.col(7);
    const Evaluator eval(x, z, folds_for(62), EvaluatorKind::ridge_wrapper,
                         RidgeConfig::desharnais_defaults());
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward_select(8, eval, exec));
    }
}

void BM_ForwardSelectSerial(benchmark::State& state) { forward_bench(state, Execution::serial); }
void BM_ForwardSelectParallel(benchmark::State& state) { forward_bench(state, Execution::parallel); }

} // namespace

BENCHMARK(BM_KernelMatrixSerial)->Arg(62)->Arg(374)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KernelMatrixParallel)->Arg(62)->Arg(374)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CvScoreSerial)->Arg(62)->Arg(374)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CvScoreParallel)->Arg(62)->Arg(374)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForwardSelectSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForwardSelectParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
