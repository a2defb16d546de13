#include <benchmark/benchmark.h>

#include "cubictrace/survey.hpp"

using namespace cubictrace;

static void BM_ClassGroup(benchmark::State& state)
{
    const Int d = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(class_group(d).order());
}
BENCHMARK(BM_ClassGroup)->Arg(-3299)->Arg(-99995)->Arg(9897)->Arg(99997);

static void BM_Compose(benchmark::State& state)
{
    BinaryQF f{3, -1, 275}, g{9, 7, 93};
    for (auto _ : state)
        benchmark::DoNotOptimize(compose(f, g));
}
BENCHMARK(BM_Compose);

static void BM_Enumerate(benchmark::State& state)
{
    const Int bound = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_fundamental(-bound, bound).size());
}
BENCHMARK(BM_Enumerate)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_TraceZero(benchmark::State& state)
{
    BinaryCubicForm f{1, 0, 2, 11};
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_zero_sublattice(full_gram(f)));
        benchmark::DoNotOptimize(explicit_trace_form(f));
    }
}
BENCHMARK(BM_TraceZero);

static void BM_CubeClass(benchmark::State& state)
{
    const Cube c = field_cube({1, 0, 2, 11});
    for (auto _ : state)
        benchmark::DoNotOptimize(cube_class(c));
}
BENCHMARK(BM_CubeClass);

static void BM_SurjectivitySearch(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(phi1_surjectivity_search(9897, state.range(0)).all_hit);
}
BENCHMARK(BM_SurjectivitySearch)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_Survey(benchmark::State& state)
{
    SurveyOptions o;
    o.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_survey(-state.range(0), state.range(0), o).total_fields);
}
BENCHMARK(BM_Survey)->Args({5000, 1})->Args({20000, 1})->Args({20000, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
