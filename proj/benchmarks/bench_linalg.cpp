// Microbenchmarks for the sparse kernels on a welding-sized fixture.

#include <benchmark/benchmark.h>

#include "weldsim/assembly.hpp"
#include "weldsim/dirichlet.hpp"
#include "weldsim/ordering.hpp"
#include "weldsim/sparse_lu.hpp"

using namespace weldsim;

namespace {

struct Fixture {
    HexMesh mesh;
    BlockSystem sys;
    Fixture() {
        mesh = build_hex_mesh({60.0, 20.0, 1.0}, {20, 10, 10});
        MeltPool pool;
        const DirichletSets sets = build_dirichlet_sets(mesh, pool, 0.05, ClampSpec{}, 0.05);
        SimulationState state = SimulationState::uniform(mesh.n_nodes, 20.0, 0.05);
        for (const auto& [n, v] : sets.temperature) {
            state.theta_cur[static_cast<std::size_t>(n)] = v;
        }
        sys = assemble(mesh, state, default_material(), sets.dof_constraints());
    }
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

} // namespace

static void BM_Spmv(benchmark::State& state) {
    const auto& f = fixture();
    std::vector<double> x(static_cast<std::size_t>(f.mesh.n_dofs), 1.0);
    std::vector<double> y(x.size());
    for (auto _ : state) {
        f.sys.K.spmv(x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * f.sys.K.nnz());
}
BENCHMARK(BM_Spmv)->Unit(benchmark::kMillisecond);

static void BM_SparseLuFactor(benchmark::State& state) {
    const auto& f = fixture();
    std::vector<std::array<int, 3>> coords(static_cast<std::size_t>(f.mesh.n_nodes));
    for (int n = 0; n < f.mesh.n_nodes; ++n) {
        coords[static_cast<std::size_t>(n)] = f.mesh.node_ijk(n);
    }
    const auto perm = expand_block_perm(lattice_nd_order(coords), 4);
    for (auto _ : state) {
        LuOptions opt;
        opt.perm = perm;
        LuFactors lu = lu_factor(f.sys.K, std::move(opt));
        benchmark::DoNotOptimize(lu.nnz_l());
    }
}
BENCHMARK(BM_SparseLuFactor)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_SparseLuSolve(benchmark::State& state) {
    const auto& f = fixture();
    std::vector<std::array<int, 3>> coords(static_cast<std::size_t>(f.mesh.n_nodes));
    for (int n = 0; n < f.mesh.n_nodes; ++n) {
        coords[static_cast<std::size_t>(n)] = f.mesh.node_ijk(n);
    }
    LuOptions opt;
    opt.perm = expand_block_perm(lattice_nd_order(coords), 4);
    const LuFactors lu = lu_factor(f.sys.K, std::move(opt));
    std::vector<double> x(static_cast<std::size_t>(f.mesh.n_dofs));
    std::vector<double> scratch;
    for (auto _ : state) {
        lu.solve(f.sys.R, x, scratch);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_SparseLuSolve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
