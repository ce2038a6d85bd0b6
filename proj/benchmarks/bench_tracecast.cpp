#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "random_tree.hpp"
#include "tracecast/executor.hpp"
#include "tracecast/testgen.hpp"
#include "tracecast/tools/gesture_log.hpp"
#include "tracecast/ui_query.hpp"

using namespace tracecast;

namespace {

std::vector<UiTree> sample_trees() {
    gen_tree::Generator g(7);
    std::vector<UiTree> out;
    for (int i = 0; i < 32; ++i) {
        out.push_back(g.tree());
    }
    return out;
}

void BM_XPathRoundTrip(benchmark::State& state) {
    auto trees = sample_trees();
    std::size_t nodes = 0;
    for (auto _ : state) {
        for (auto const& t : trees) {
            visit_preorder(t.root, [&](UiNode const& n, int, UiNode const*) {
                benchmark::DoNotOptimize(evaluate_xpath(t, xpath_for(t, n.id)));
                ++nodes;
            });
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(nodes));
}
BENCHMARK(BM_XPathRoundTrip);

void BM_HitTest(benchmark::State& state) {
    auto trees = sample_trees();
    int x = 0;
    for (auto _ : state) {
        for (auto const& t : trees) {
            benchmark::DoNotOptimize(hit_test(t, x % 1080, (x * 7) % 1920));
        }
        x += 13;
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trees.size()));
}
BENCHMARK(BM_HitTest);

void BM_RecordDivideByZero(benchmark::State& state) {
    auto app = fixtures::app("calculator");
    auto device = fixtures::device("mdpi-480x800");
    auto log = tools::load_gesture_log(fixtures::path("gestures/divide_by_zero.jsonl"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tools::record_headless(app, device, log));
    }
}
BENCHMARK(BM_RecordDivideByZero);

void BM_GenerateEspresso(benchmark::State& state) {
    auto trace = parse_trace(fixtures::read("golden/divide_by_zero.trace.json"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen::emit_espresso(gen::generate(trace, true)));
    }
}
BENCHMARK(BM_GenerateEspresso);

void BM_ExecuteCleanProfiles(benchmark::State& state) {
    auto app = fixtures::app("calculator");
    auto script = gen::parse_ir(fixtures::read("golden/divide_by_zero.ir.json"));
    std::vector<sim::DeviceProfile> devices;
    for (auto name : fixtures::clean_devices) {
        devices.push_back(fixtures::device(name));
    }
    exec::ExecutorOptions options;
    options.parallel = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exec::run_all(script, app, devices, options));
    }
}
BENCHMARK(BM_ExecuteCleanProfiles)->Arg(0)->Arg(1);

} // namespace

BENCHMARK_MAIN();
