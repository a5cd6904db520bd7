#include "mform/classical_forms.hpp"
#include "mform/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace mform;

namespace {

// theta_1^2 * mu at q^k, y >= -40: the product behind H_g
void operands(long k, QYSeries& a, QYSeries& b)
{
    a = theta1_sq(24 * k, -40);
    b = appell_mu(24 * k, -40);
}

void BM_parallel(benchmark::State& st)
{
    QYSeries a, b;
    operands(st.range(0), a, b);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::mul_blocked(a, b, true));
}

void BM_serial(benchmark::State& st)
{
    QYSeries a, b;
    operands(st.range(0), a, b);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::mul_blocked(a, b, false));
}

void BM_reference(benchmark::State& st)
{
    QYSeries a, b;
    operands(st.range(0), a, b);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::mul_reference(a, b));
}

} // namespace

BENCHMARK(BM_parallel)->Arg(4)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_serial)->Arg(4)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reference)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
