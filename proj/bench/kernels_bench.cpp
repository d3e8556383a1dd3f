// Serial reference kernels against their parallel counterparts.
//
//   mlpi_bench --benchmark_filter=Square
//
// OMP_NUM_THREADS controls the parallel side.

#include <benchmark/benchmark.h>

#include "mlpi/exact.hpp"
#include "mlpi/machin.hpp"
#include "mlpi/series.hpp"

using namespace mlpi;

namespace {

// (83443 + i)^(2^(k-1)): the u2 solve for k = 17 after k-1 squarings.
void BM_GaussianPowSerial(benchmark::State& state) {
    const auto n = std::uint64_t{1} << state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(serial::gi_pow({83443, 1}, n));
}

void BM_GaussianPowParallel(benchmark::State& state) {
    const auto n = std::uint64_t{1} << state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(gi_pow({83443, 1}, n));
}

BENCHMARK(BM_GaussianPowSerial)->DenseRange(12, 18, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GaussianPowParallel)->DenseRange(12, 18, 2)->Unit(benchmark::kMillisecond);

void BM_SquareSerial(benchmark::State& state) {
    GaussianInt g = gi_pow({651, 1}, std::uint64_t{1} << state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(serial::gi_square(g));
}

void BM_SquareParallel(benchmark::State& state) {
    GaussianInt g = gi_pow({651, 1}, std::uint64_t{1} << state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gi_square(g));
}

BENCHMARK(BM_SquareSerial)->DenseRange(14, 20, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SquareParallel)->DenseRange(14, 20, 2)->Unit(benchmark::kMillisecond);

const MachinFormula& k10_formula() {
    static const MachinFormula f = [] {
        BigRational u1(651);
        return MachinFormula::two_term(u1, 10, solve_u2(u1, 10));
    }();
    return f;
}

void BM_PiPartialSumsSerial(benchmark::State& state) {
    const auto terms = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(serial::pi_partial_sums(k10_formula(), terms, 8 * terms * 21));
}

void BM_PiPartialSumsParallel(benchmark::State& state) {
    const auto terms = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pi_partial_sums(k10_formula(), terms, 8 * terms * 21));
}

BENCHMARK(BM_PiPartialSumsSerial)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PiPartialSumsParallel)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

// Two conjugate streams against the one-stream kernel.
void BM_ArctanTwoStream(benchmark::State& state) {
    const auto terms = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(serial::arctan_eq12(BigRational(BigInt(1), BigInt(5)), terms, 4096));
}

void BM_ArctanOneStream(benchmark::State& state) {
    const auto terms = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(arctan_eq12(BigRational(BigInt(1), BigInt(5)), terms, 4096));
}

BENCHMARK(BM_ArctanTwoStream)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArctanOneStream)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
