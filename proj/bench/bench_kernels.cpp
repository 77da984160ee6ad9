// Parallel kernels against their serial references. Run with
//   build/bench_kernels --benchmark_min_time=0.5

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "emortal/dc_solver.hpp"
#include "emortal/engine.hpp"
#include "emortal/generator.hpp"
#include "emortal/graph.hpp"
#include "emortal/reference.hpp"

namespace {

using namespace emortal;

const InterconnectGraph& mesh(int side) {
    static std::vector<std::pair<int, InterconnectGraph>> cache;
    for (const auto& [s, g] : cache) {
        if (s == side) return g;
    }
    GenSpec spec;
    spec.topology = GenSpec::Topology::grid_mesh;
    spec.seed = 21;
    spec.rows = side;
    spec.cols = side;
    spec.peak_jl_ratio = 1.4;
    cache.emplace_back(side, generate(spec));
    return cache.back().second;
}

void engine_parallel(benchmark::State& state) {
    const InterconnectGraph& g = mesh(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        StressSolution sol = analyze(g);
        benchmark::DoNotOptimize(sol.node_stress.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(g.segment_count()) *
                            state.iterations());
}

void engine_reference(benchmark::State& state) {
    const InterconnectGraph& g = mesh(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        StressSolution sol = reference::analyze(g);
        benchmark::DoNotOptimize(sol.node_stress.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(g.segment_count()) *
                            state.iterations());
}

DcNetlist grid_netlist(int side) {
    DcNetlist net;
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    const auto next = [&h] {
        h ^= h >> 12;
        h ^= h << 25;
        h ^= h >> 27;
        return h * 0x2545f4914f6cdd1dull;
    };
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) net.intern("g" + std::to_string(r * side + c));
    }
    int e = 0;
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const double ohm = 0.5 + static_cast<double>(next() >> 11) * 0x1.0p-53 * 4.5;
            if (c + 1 < side) {
                net.resistors.push_back(
                    {"R" + std::to_string(e++), r * side + c, r * side + c + 1, ohm, "M1"});
            }
            if (r + 1 < side) {
                net.resistors.push_back(
                    {"R" + std::to_string(e++), r * side + c, (r + 1) * side + c, ohm, "M1"});
            }
        }
    }
    net.grounds.push_back(0);
    for (int k = 0; k < side; ++k) {
        const int node = 1 + static_cast<int>(next() % static_cast<std::uint64_t>(
                                                        side * side - 1));
        net.current_sources.push_back({"I" + std::to_string(k), node, 0, 0.001});
    }
    return net;
}

void dc_solve_bench(benchmark::State& state, bool parallel) {
    static std::vector<std::pair<int, DcNetlist>> cache;
    const int side = static_cast<int>(state.range(0));
    const DcNetlist* net = nullptr;
    for (const auto& [s, n] : cache) {
        if (s == side) net = &n;
    }
    if (!net) {
        cache.emplace_back(side, grid_netlist(side));
        net = &cache.back().second;
    }
    DcOptions opts;
    opts.tol = 1e-8;
    opts.dense_cutoff = 0;
    opts.parallel = parallel;
    for (auto _ : state) {
        DcSolution sol = solve_dc(*net, opts);
        benchmark::DoNotOptimize(sol.node_voltage.data());
    }
}

void dc_parallel(benchmark::State& state) { dc_solve_bench(state, true); }
void dc_serial(benchmark::State& state) { dc_solve_bench(state, false); }

BENCHMARK(engine_parallel)->Arg(32)->Arg(128)->Arg(316)->Unit(benchmark::kMillisecond);
BENCHMARK(engine_reference)->Arg(32)->Arg(128)->Arg(316)->Unit(benchmark::kMillisecond);
BENCHMARK(dc_parallel)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(dc_serial)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
