#include <benchmark/benchmark.h>

#include "beliefkit/continuity.hpp"
#include "beliefkit/filter.hpp"
#include "beliefkit/instances.hpp"
#include "beliefkit/model_spec.hpp"

using namespace beliefkit;

namespace {

void bm_tv_distance(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    const SpacePtr s = make_space("S", std::move(ids));
    const Measure a = Measure::uniform(s);
    const Measure b = Measure::dirac(s, std::size_t{0});
    for (auto _ : state) benchmark::DoNotOptimize(tv_distance(a, b));
}
BENCHMARK(bm_tv_distance)->Arg(8)->Arg(64)->Arg(512);

void bm_disintegrate(benchmark::State& state) {
    const GeneratedInstance inst =
        generate_instance(1, GroundTruth::Continuous, std::size_t(state.range(0)), 8);
    const JointMeasure jm = inst.eval(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(disintegrate(jm));
}
BENCHMARK(bm_disintegrate)->Arg(4)->Arg(16)->Arg(64);

void bm_condition_gap(benchmark::State& state) {
    const GeneratedInstance inst = generate_instance(1, GroundTruth::Continuous, 4, 4);
    const auto kernel = inst.kernel();
    const auto seq = instance_sequence();
    const FunctionFamily fam = FunctionFamily::discrete_default(inst.s1);
    for (auto _ : state)
        benchmark::DoNotOptimize(condition_gap(kernel, seq, ConditionId::SufA,
                                               function_witness(fam.member(1))));
}
BENCHMARK(bm_condition_gap);

void bm_filter_update(benchmark::State& state) {
    const ModelSpec spec = builtin_model_spec("twostate-demo");
    for (auto _ : state)
        benchmark::DoNotOptimize(filter_update(spec.model, spec.prior, 0, 0, 0));
}
BENCHMARK(bm_filter_update);

}  // namespace

BENCHMARK_MAIN();
