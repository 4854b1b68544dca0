// Preconditioner build/apply cost on a 4x4x1 decomposition.

#include <benchmark/benchmark.h>

#include "weldsim/assembly.hpp"
#include "weldsim/dirichlet.hpp"
#include "weldsim/schwarz.hpp"

using namespace weldsim;

namespace {

struct Fixture {
    HexMesh mesh;
    DomainDecomposition dd;
    DofMap dofmap;
    BlockSystem sys;
    Fixture() {
        mesh = build_hex_mesh({60.0, 20.0, 1.0}, {20, 10, 10});
        dd = partition(mesh, {4, 2, 1});
        extend_overlap(mesh, dd, 1);
        classify_interface(mesh, dd, {});
        MeltPool pool;
        const DirichletSets sets = build_dirichlet_sets(mesh, pool, 0.05, ClampSpec{}, 0.05);
        const auto constraints = sets.dof_constraints();
        dofmap = build_dof_map(mesh, dd, constraints);
        SimulationState state = SimulationState::uniform(mesh.n_nodes, 20.0, 0.05);
        for (const auto& [n, v] : sets.temperature) {
            state.theta_cur[static_cast<std::size_t>(n)] = v;
        }
        sys = assemble(mesh, state, default_material(), constraints);
    }
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

void bench_build(benchmark::State& state, PrecKind kind) {
    const auto& f = fixture();
    for (auto _ : state) {
        SchwarzPreconditioner prec = build_schwarz(kind, f.sys.K, f.mesh, f.dd, f.dofmap, 0);
        benchmark::DoNotOptimize(prec.n_dofs);
    }
}

void bench_apply(benchmark::State& state, PrecKind kind) {
    const auto& f = fixture();
    const SchwarzPreconditioner prec = build_schwarz(kind, f.sys.K, f.mesh, f.dd, f.dofmap, 0);
    SchwarzWorkspace ws;
    std::vector<double> z(static_cast<std::size_t>(f.mesh.n_dofs));
    for (auto _ : state) {
        prec.apply(f.sys.R, z, ws, 0);
        benchmark::DoNotOptimize(z.data());
    }
}

} // namespace

static void BM_BuildOneLevel(benchmark::State& s) { bench_build(s, PrecKind::one_level); }
static void BM_BuildGdsw(benchmark::State& s) { bench_build(s, PrecKind::gdsw); }
static void BM_BuildEgdsw(benchmark::State& s) { bench_build(s, PrecKind::egdsw); }
static void BM_ApplyOneLevel(benchmark::State& s) { bench_apply(s, PrecKind::one_level); }
static void BM_ApplyGdsw(benchmark::State& s) { bench_apply(s, PrecKind::gdsw); }

BENCHMARK(BM_BuildOneLevel)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK(BM_BuildGdsw)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK(BM_BuildEgdsw)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK(BM_ApplyOneLevel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyGdsw)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
