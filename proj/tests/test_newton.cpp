#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "weldsim/newton.hpp"
#include "weldsim/schwarz.hpp"
#include "weldsim/sparse_lu.hpp"

using namespace weldsim;

namespace {

PrecBuilder exact_lu_builder() {
    return [](const BlockSystem& sys, const DofMap&) {
        auto f = std::make_shared<LuFactors>(lu_factor(sys.K));
        return LinearOperator([f](std::span<const double> r, std::span<double> z) {
            std::vector<double> scratch;
            f->solve(r, z, scratch);
        });
    };
}

} // namespace

TEST_CASE("statistics arithmetic: rounded averages and totals") {
    CHECK(rounded_average(46, 4) == 12);   // (10, 12, 11, 13)
    CHECK(rounded_average(46, 0) == 0);
    CHECK(rounded_average(10, 4) == 3);    // 2.5 rounds away from zero
    TimeLoopReport r;
    StepStats s1;
    s1.gmres_iters = {10, 12};
    s1.it_tot = 22;
    StepStats s2;
    s2.gmres_iters = {11, 13};
    s2.it_tot = 24;
    r.steps = {s1, s2};
    CHECK(r.it_tot() == 46);
    CHECK(r.it_avg() == 12);
}

TEST_CASE("fully constrained system needs zero GMRES iterations") {
    const HexMesh mesh = build_hex_mesh({1.0, 1.0, 1.0}, {1, 1, 1});
    DomainDecomposition dd = partition(mesh, {1, 1, 1});
    classify_interface(mesh, dd, {});
    SimulationState state = SimulationState::uniform(mesh.n_nodes, 20.0, 0.05);
    std::vector<std::pair<int, double>> constraints;
    for (int n = 0; n < mesh.n_nodes; ++n) {
        for (int c = 0; c < 3; ++c) { constraints.emplace_back(HexMesh::dof(n, c), 0.0); }
        constraints.emplace_back(HexMesh::dof(n, 3), 20.0);
    }
    const DofMap dofmap = build_dof_map(mesh, dd, constraints);
    AssemblyWorkspace ws(mesh);
    const NewtonReport report = newton_solve(mesh, state, default_material(), constraints, dofmap,
                                             exact_lu_builder(), {}, ws, 1);
    CHECK(report.converged);
    CHECK(report.newton_iters == 0);
    CHECK(report.solves.empty());
}

TEST_CASE("linear pure-conduction problem converges in one Newton iteration") {
    const HexMesh mesh = build_hex_mesh({2.0, 1.0, 1.0}, {4, 2, 2});
    DomainDecomposition dd = partition(mesh, {1, 1, 1});
    classify_interface(mesh, dd, {});
    MaterialParams mat = default_material();
    mat.alpha_T = 0.0;  // no coupling: the theta problem is linear
    mat.derive();

    SimulationState state = SimulationState::uniform(mesh.n_nodes, 20.0, 0.05);
    std::vector<std::pair<int, double>> constraints;
    for (int n = 0; n < mesh.n_nodes; ++n) {
        for (int c = 0; c < 3; ++c) { constraints.emplace_back(HexMesh::dof(n, c), 0.0); }
        const double x = mesh.node_coords[static_cast<std::size_t>(n)][0];
        if (x == 0.0) { constraints.emplace_back(HexMesh::dof(n, 3), 100.0); }
        if (x == 2.0) { constraints.emplace_back(HexMesh::dof(n, 3), 300.0); }
    }
    const DofMap dofmap = build_dof_map(mesh, dd, constraints);
    AssemblyWorkspace ws(mesh);
    NewtonOptions options;
    options.gmres.rtol = 1e-12;
    const NewtonReport report = newton_solve(mesh, state, mat, constraints, dofmap,
                                             exact_lu_builder(), options, ws, 1);
    CHECK(report.converged);
    CHECK(report.newton_iters == 1);
}

TEST_CASE("time loop: one step equals one newton solve after BC setup") {
    const HexMesh mesh = build_hex_mesh({4.0, 2.0, 1.0}, {4, 2, 1});
    DomainDecomposition dd = partition(mesh, {2, 1, 1});
    extend_overlap(mesh, dd, 1);
    classify_interface(mesh, dd, {});
    const MaterialParams mat = default_material();
    MeltPool pool;
    pool.a_x = 1.5;
    pool.a_y = 1.2;
    pool.a_z = 2.0;
    pool.position_0 = 2.0;
    pool.center_y = 1.0;
    pool.z_top = 1.0;
    pool.speed = 0.0;
    pool.theta_l = 500.0;

    SimulationState s_loop = SimulationState::uniform(mesh.n_nodes, mat.theta0, 0.05);
    const TimeLoopReport loop = time_loop(mesh, dd, mat, pool, ClampSpec{}, s_loop, 1, 0.05,
                                          exact_lu_builder(), {}, 1);
    REQUIRE(loop.converged);
    REQUIRE(loop.steps.size() == 1);

    // Manual replica of the step.
    SimulationState s_manual = SimulationState::uniform(mesh.n_nodes, mat.theta0, 0.05);
    const DirichletSets sets = build_dirichlet_sets(mesh, pool, 0.05, ClampSpec{}, 0.05);
    const auto constraints = sets.dof_constraints();
    const DofMap dofmap = build_dof_map(mesh, dd, constraints);
    for (int n : sets.displacement_nodes) {
        for (int c = 0; c < 3; ++c) { s_manual.u_cur[static_cast<std::size_t>(3 * n + c)] = 0.0; }
    }
    for (const auto& [n, v] : sets.temperature) {
        s_manual.theta_cur[static_cast<std::size_t>(n)] = v;
    }
    s_manual.time = 0.05;
    AssemblyWorkspace ws(mesh);
    const NewtonReport manual = newton_solve(mesh, s_manual, mat, constraints, dofmap,
                                             exact_lu_builder(), {}, ws, 1);
    CHECK(manual.converged);
    CHECK(manual.newton_iters == loop.steps[0].it_newton);
    CHECK(s_manual.theta_cur == s_loop.theta_cur);  // bitwise identical paths
    CHECK(s_manual.u_cur == s_loop.u_cur);
}

TEST_CASE("newton reports nonconvergence with the x outcome semantics") {
    const HexMesh mesh = build_hex_mesh({4.0, 2.0, 1.0}, {4, 2, 2});
    DomainDecomposition dd = partition(mesh, {2, 1, 1});
    extend_overlap(mesh, dd, 1);
    classify_interface(mesh, dd, {});
    const MaterialParams mat = default_material();
    MeltPool pool;
    pool.position_0 = 2.0;
    pool.center_y = 1.0;
    pool.a_x = 1.0;
    pool.a_y = 0.8;
    pool.a_z = 1.0;
    pool.z_top = 1.0;
    pool.speed = 0.0;

    SimulationState state = SimulationState::uniform(mesh.n_nodes, mat.theta0, 0.05);
    NewtonOptions options;
    options.gmres.max_iters = 2;  // strangle the linear solver

    PrecBuilder no_prec;  // unpreconditioned
    const TimeLoopReport loop = time_loop(mesh, dd, mat, pool, ClampSpec{}, state, 2, 0.05,
                                          no_prec, options, 1);
    CHECK(!loop.converged);
    CHECK(!loop.failure.empty());
    REQUIRE(!loop.steps.empty());
    CHECK(!loop.steps.back().converged);
}

TEST_CASE("desk-scale welding step: newton converges within budget") {
    const HexMesh mesh = build_hex_mesh({60.0, 20.0, 1.0}, {20, 10, 5});
    DomainDecomposition dd = partition(mesh, {2, 2, 1});
    extend_overlap(mesh, dd, 1);
    classify_interface(mesh, dd, {});
    const MaterialParams mat = default_material();
    MeltPool pool;  // defaults: 3 x 1.5 x 1 ellipsoid at (10, 10)

    SimulationState state = SimulationState::uniform(mesh.n_nodes, mat.theta0, 0.05);
    PrecBuilder builder = [&mesh, &dd](const BlockSystem& sys, const DofMap& dofmap) {
        return make_prec_operator(
            std::make_shared<const SchwarzPreconditioner>(
                build_schwarz(PrecKind::gdsw, sys.K, mesh, dd, dofmap, 2)),
            2);
    };
    const TimeLoopReport loop =
        time_loop(mesh, dd, mat, pool, ClampSpec{}, state, 2, 0.05, builder, {}, 2);
    REQUIRE(loop.converged);
    for (const auto& s : loop.steps) {
        CHECK(s.it_newton <= 10);
        CHECK(s.converged);
    }
    // Hot nodes reached the pool temperature; elsewhere the plate warmed up
    // monotonically from the initial 20 C.
    double theta_max = 0.0;
    for (double v : state.theta_cur) { theta_max = std::max(theta_max, v); }
    CHECK(theta_max == doctest::Approx(1480.0));
}

TEST_CASE("newton residuals decrease monotonically in the asymptotic regime") {
    const HexMesh mesh = build_hex_mesh({60.0, 20.0, 1.0}, {20, 10, 5});
    DomainDecomposition dd = partition(mesh, {2, 2, 1});
    extend_overlap(mesh, dd, 1);
    classify_interface(mesh, dd, {});
    const MaterialParams mat = default_material();
    MeltPool pool;

    const DirichletSets sets = build_dirichlet_sets(mesh, pool, 0.05, ClampSpec{}, 0.05);
    const auto constraints = sets.dof_constraints();
    const DofMap dofmap = build_dof_map(mesh, dd, constraints);
    SimulationState state = SimulationState::uniform(mesh.n_nodes, mat.theta0, 0.05);
    for (int n : sets.displacement_nodes) {
        for (int c = 0; c < 3; ++c) { state.u_cur[static_cast<std::size_t>(3 * n + c)] = 0.0; }
    }
    for (const auto& [n, v] : sets.temperature) {
        state.theta_cur[static_cast<std::size_t>(n)] = v;
    }
    AssemblyWorkspace ws(mesh);
    const NewtonReport report = newton_solve(mesh, state, mat, constraints, dofmap,
                                             exact_lu_builder(), {}, ws, 2);
    REQUIRE(report.converged);
    const auto& r = report.residual_norms;
    REQUIRE(r.size() >= 3);
    CHECK(r[r.size() - 1] < r[r.size() - 2]);
    CHECK(r[r.size() - 2] < r[r.size() - 3]);
}
