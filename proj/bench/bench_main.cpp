#include <benchmark/benchmark.h>

#include "difftop/correlators.hpp"
#include "difftop/diffsys.hpp"
#include "difftop/toprec.hpp"

using namespace difftop;

namespace {

const MTower& tower() {
    static const MTower m = diffsys::m_p1(6);
    return m;
}

void BM_SampleValues(benchmark::State& st) {
    bool parallel = st.range(0) != 0;
    auto tuples = corr::random_tuples(5, 3, 32);
    const MTower& m = tower();
    for (auto _ : st) benchmark::DoNotOptimize(corr::sample_values(m, tuples, 5, parallel));
}
BENCHMARK(BM_SampleValues)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_OmegaCold(benchmark::State& st) {
    for (auto _ : st) {
        toprec::clear_memo();
        benchmark::DoNotOptimize(toprec::omega(static_cast<int>(st.range(0)), static_cast<int>(st.range(1))));
    }
}
BENCHMARK(BM_OmegaCold)->Args({2, 1})->Args({1, 3})->Args({0, 6})->Unit(benchmark::kMillisecond);

void BM_MTower(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(diffsys::m_p1(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_MTower)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
