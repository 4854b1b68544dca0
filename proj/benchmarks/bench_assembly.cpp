// Element kernel and global assembly throughput.

#include <benchmark/benchmark.h>

#include "weldsim/assembly.hpp"
#include "weldsim/element_kernel.hpp"

using namespace weldsim;

static void BM_ElementKernel(benchmark::State& state) {
    ElementInputs in;
    in.coords = {{{0, 0, 0}, {0.375, 0, 0}, {0.375, 0.25, 0}, {0, 0.25, 0},
                  {0, 0, 0.1}, {0.375, 0, 0.1}, {0.375, 0.25, 0.1}, {0, 0.25, 0.1}}};
    in.theta.fill(120.0);
    in.theta_old.fill(20.0);
    for (int i = 0; i < 24; ++i) { in.u[static_cast<std::size_t>(i)] = 1e-4 * i; }
    const MaterialParams mat = default_material();
    for (auto _ : state) {
        ElementKernelOutput out = element_kernel(in, mat, 0.05);
        benchmark::DoNotOptimize(out.re[0]);
    }
}
BENCHMARK(BM_ElementKernel)->Unit(benchmark::kMicrosecond);

static void BM_Assemble(benchmark::State& state) {
    const HexMesh mesh = build_hex_mesh({60.0, 20.0, 1.0}, {40, 20, 10});
    SimulationState s = SimulationState::uniform(mesh.n_nodes, 20.0, 0.05);
    AssemblyWorkspace ws(mesh);
    const MaterialParams mat = default_material();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        BlockSystem sys = assemble(mesh, s, mat, {}, ws, threads);
        benchmark::DoNotOptimize(sys.R.data());
    }
    state.SetItemsProcessed(state.iterations() * mesh.n_elements());
}
BENCHMARK(BM_Assemble)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
