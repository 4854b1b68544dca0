#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "test_util.hpp"
#include "weldsim/assembly.hpp"
#include "weldsim/dirichlet.hpp"
#include "weldsim/errors.hpp"
#include "weldsim/schwarz.hpp"

using namespace weldsim;

namespace {

struct Problem {
    HexMesh mesh;
    DomainDecomposition dd;
    DofMap dofmap;
    BlockSystem sys;
};

// A small welding-like system: clamped y-faces, a hot patch of prescribed
// temperatures, a mildly excited state.
Problem make_problem(const std::array<int, 3>& n_elems, const std::array<int, 3>& grid,
                     int overlap) {
    Problem p;
    p.mesh = build_hex_mesh({4.0, 2.0, 1.0}, n_elems);
    p.dd = partition(p.mesh, grid);
    extend_overlap(p.mesh, p.dd, overlap);
    classify_interface(p.mesh, p.dd, {});

    MeltPool pool;
    pool.a_x = 1.0;
    pool.a_y = 0.6;
    pool.a_z = 1.0;
    pool.position_0 = 1.2;
    pool.center_y = 1.0;
    pool.z_top = 1.0;
    pool.speed = 0.0;
    const DirichletSets sets = build_dirichlet_sets(p.mesh, pool, 0.0, ClampSpec{}, 0.05);
    const auto constraints = sets.dof_constraints();
    p.dofmap = build_dof_map(p.mesh, p.dd, constraints);

    SimulationState state = SimulationState::uniform(p.mesh.n_nodes, 20.0, 0.05);
    for (const auto& [n, v] : sets.temperature) { state.theta_cur[static_cast<std::size_t>(n)] = v; }
    for (int n : sets.displacement_nodes) {
        for (int c = 0; c < 3; ++c) { state.u_cur[static_cast<std::size_t>(3 * n + c)] = 0.0; }
    }
    p.sys = assemble(p.mesh, state, default_material(), constraints);
    return p;
}

std::vector<double> dense_apply_one_level(const Problem& p, const OneLevelAS& one,
                                          const std::vector<double>& r) {
    std::vector<double> z(static_cast<std::size_t>(p.mesh.n_dofs), 0.0);
    const auto dense_k = testutil::to_dense(p.sys.K);
    for (const auto& idx : one.restrictions) {
        const std::size_t m = idx.size();
        std::vector<double> sub(m * m), rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            rhs[i] = r[static_cast<std::size_t>(idx[i])];
            for (std::size_t j = 0; j < m; ++j) {
                sub[i * m + j] = dense_k[static_cast<std::size_t>(idx[i]) *
                                             static_cast<std::size_t>(p.mesh.n_dofs) +
                                         static_cast<std::size_t>(idx[j])];
            }
        }
        const auto x = testutil::dense_solve(sub, rhs);
        for (std::size_t i = 0; i < m; ++i) { z[static_cast<std::size_t>(idx[i])] += x[i]; }
    }
    return z;
}

} // namespace

TEST_CASE("single subdomain one-level preconditioner is a direct solver") {
    Problem p = make_problem({2, 2, 1}, {1, 1, 1}, 0);
    const OneLevelAS one = build_one_level(p.sys.K, p.mesh, p.dd, 1);
    SchwarzWorkspace ws;
    const auto r = testutil::random_vector(static_cast<std::size_t>(p.mesh.n_dofs), 3);
    std::vector<double> z(r.size());
    apply_one_level(one, r, z, ws, 1);
    const auto ref = testutil::dense_solve(testutil::to_dense(p.sys.K), r);
    CHECK(testutil::rel_err(z, ref) < 1e-10);
}

TEST_CASE("disjoint subdomains on a block-diagonal matrix solve exactly") {
    // Hand-built: two blocks with no shared DoFs.
    std::vector<Triplet> t;
    for (int i = 0; i < 4; ++i) { t.push_back({i, i, 2.0 + i}); }
    t.push_back({0, 1, -0.5});
    t.push_back({1, 0, -0.5});
    for (int i = 4; i < 8; ++i) { t.push_back({i, i, 3.0 + i}); }
    t.push_back({5, 6, 0.25});
    t.push_back({6, 5, 0.25});
    const CsrMatrix k = csr_from_triplets(8, 8, t);

    OneLevelAS one;
    one.restrictions = {{0, 1, 2, 3}, {4, 5, 6, 7}};
    for (const auto& idx : one.restrictions) {
        one.factors.push_back(lu_factor(extract_submatrix(k, idx)));
    }
    SchwarzWorkspace ws;
    const auto r = testutil::random_vector(8, 5);
    std::vector<double> z(8);
    apply_one_level(one, r, z, ws, 1);
    const auto ref = testutil::dense_solve(testutil::to_dense(k), r);
    CHECK(testutil::rel_err(z, ref) < 1e-12);
}

TEST_CASE("one-level apply: zero input, linearity, overlap double counting") {
    Problem p = make_problem({4, 2, 1}, {2, 1, 1}, 1);
    const OneLevelAS one = build_one_level(p.sys.K, p.mesh, p.dd, 2);
    SchwarzWorkspace ws;

    std::vector<double> zero(static_cast<std::size_t>(p.mesh.n_dofs), 0.0), z(zero.size());
    apply_one_level(one, zero, z, ws, 1);
    for (double v : z) { CHECK(v == 0.0); }

    const auto r = testutil::random_vector(zero.size(), 9);
    std::vector<double> z1(zero.size()), z2(zero.size()), r2(zero.size());
    apply_one_level(one, r, z1, ws, 1);
    for (std::size_t i = 0; i < r.size(); ++i) { r2[i] = -2.5 * r[i]; }
    apply_one_level(one, r2, z2, ws, 1);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(z2[i] == doctest::Approx(-2.5 * z1[i]).epsilon(1e-12));
    }

    // Additive semantics on identity subdomain matrices: shared DoFs get 2r.
    std::vector<Triplet> t;
    for (int i = 0; i < p.mesh.n_dofs; ++i) { t.push_back({i, i, 1.0}); }
    const CsrMatrix identity = csr_from_triplets(p.mesh.n_dofs, p.mesh.n_dofs, t);
    const OneLevelAS one_id = build_one_level(identity, p.mesh, p.dd, 1);
    apply_one_level(one_id, r, z, ws, 1);
    std::set<int> shared(one_id.restrictions[0].begin(), one_id.restrictions[0].end());
    for (int d : one_id.restrictions[1]) {
        const double expected = shared.count(d) ? 2.0 * r[static_cast<std::size_t>(d)]
                                                : r[static_cast<std::size_t>(d)];
        CHECK(z[static_cast<std::size_t>(d)] == doctest::Approx(expected));
    }
}

TEST_CASE("one-level apply matches the dense per-subdomain oracle") {
    Problem p = make_problem({2, 2, 1}, {2, 2, 1}, 1);
    const OneLevelAS one = build_one_level(p.sys.K, p.mesh, p.dd, 1);
    SchwarzWorkspace ws;
    const auto r = testutil::random_vector(static_cast<std::size_t>(p.mesh.n_dofs), 17);
    std::vector<double> z(r.size());
    apply_one_level(one, r, z, ws, 1);
    CHECK(testutil::rel_err(z, dense_apply_one_level(p, one, r)) < 1e-10);
}

TEST_CASE("interface values: column structure and partition of unity") {
    Problem p = make_problem({4, 2, 2}, {2, 2, 1}, 1);
    const PhiGamma phi = build_interface_values(p.dd, p.dofmap);

    // Per-node sums: the four columns of one component put (1,1,1,1) on the
    // node's DoFs unless constrained.
    for (std::size_t c = 0; c < phi.cols.size(); ++c) {
        for (const auto& [d, v] : phi.cols[c]) {
            CHECK(v == 1.0);
            CHECK(HexMesh::dof_field(d) == phi.meta[c].kind);
            CHECK(!p.dofmap.is_constrained[static_cast<std::size_t>(d)]);
        }
    }

    // Theta partition of unity over all interface theta DoFs.
    std::vector<double> sum(static_cast<std::size_t>(p.mesh.n_dofs), 0.0);
    for (std::size_t c = 0; c < phi.cols.size(); ++c) {
        if (phi.meta[c].kind != 3) { continue; }
        for (const auto& [d, v] : phi.cols[c]) { sum[static_cast<std::size_t>(d)] += v; }
    }
    for (int d : p.dofmap.interface) {
        if (HexMesh::dof_field(d) == 3) { CHECK(sum[static_cast<std::size_t>(d)] == 1.0); }
    }
}

TEST_CASE("interface values: 2x1x1 decomposition yields exactly 4 columns") {
    Problem p = make_problem({2, 1, 1}, {2, 1, 1}, 1);
    const PhiGamma phi = build_interface_values(p.dd, p.dofmap);
    CHECK(phi.cols.size() + phi.dropped.size() == 4 * p.dd.components.size());
    CHECK(p.dd.components.size() == 1);
    // The clamp constrains u on the whole y-extent of this 1-element-thick
    // face, so the three u columns are dropped and the theta column stays.
    CHECK(phi.cols.size() + phi.dropped.size() == 4);
}

TEST_CASE("fully constrained component columns are dropped and logged") {
    Problem p = make_problem({2, 2, 1}, {2, 1, 1}, 1);
    // Constrain theta on every interface node as if the pool swallowed the
    // face; u stays free away from clamps.
    std::vector<std::pair<int, double>> constraints;
    for (int n : p.dd.interface_nodes) { constraints.emplace_back(HexMesh::dof(n, 3), 1480.0); }
    const DofMap dofmap = build_dof_map(p.mesh, p.dd, constraints);
    const PhiGamma phi = build_interface_values(p.dd, dofmap);
    bool theta_dropped = false;
    for (const auto& m : phi.dropped) { theta_dropped = theta_dropped || m.kind == 3; }
    CHECK(theta_dropped);
    for (const auto& m : phi.meta) { CHECK(m.kind != 3); }
}

TEST_CASE("harmonic extension of interface constants is constant") {
    // Pure conduction: no coupling, no capacity, u fully clamped.
    const HexMesh mesh = build_hex_mesh({4.0, 2.0, 1.0}, {4, 2, 2});
    DomainDecomposition dd = partition(mesh, {2, 1, 1});
    extend_overlap(mesh, dd, 1);
    classify_interface(mesh, dd, {});

    MaterialParams mat = default_material();
    mat.alpha_T = 0.0;
    mat.c_rho = 0.0;
    mat.derive();

    std::vector<std::pair<int, double>> constraints;
    for (int n = 0; n < mesh.n_nodes; ++n) {
        for (int c = 0; c < 3; ++c) { constraints.emplace_back(HexMesh::dof(n, c), 0.0); }
    }
    const DofMap dofmap = build_dof_map(mesh, dd, constraints);
    SimulationState state = SimulationState::uniform(mesh.n_nodes, 20.0, 0.05);
    const BlockSystem sys = assemble(mesh, state, mat, constraints);
    const CsrMatrix k_csc = csr_transpose(sys.K);

    // One basis function: constant 1 on the full interface (theta field).
    PhiGamma phi;
    phi.cols.emplace_back();
    phi.meta.push_back({0, 3});
    for (int n : dd.interface_nodes) { phi.cols[0].emplace_back(HexMesh::dof(n, 3), 1.0); }

    for (CoarseMode mode : {CoarseMode::monolithic, CoarseMode::economic}) {
        const CoarseSpace coarse = extend_basis(sys.K, k_csc, mesh, dd, dofmap, phi, mode, 1);
        REQUIRE(coarse.phi_cols.size() == 1);
        std::size_t interior_count = 0;
        for (const auto& [d, v] : coarse.phi_cols[0]) {
            CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
            if (!dofmap.is_interface_dof[static_cast<std::size_t>(d)]) { ++interior_count; }
        }
        // Every unconstrained interior theta DoF participates.
        std::size_t expected = 0;
        for (int d : dofmap.interior) {
            if (HexMesh::dof_field(d) == 3) { ++expected; }
        }
        CHECK(interior_count == expected);
        CHECK(coarse.extension_residual < 1e-12);
    }
}

TEST_CASE("extension: interface rows exact, off-diagonal blocks zero, residual small") {
    Problem p = make_problem({4, 2, 2}, {2, 2, 1}, 1);
    const CsrMatrix k_csc = csr_transpose(p.sys.K);
    const PhiGamma phi = build_interface_values(p.dd, p.dofmap);

    for (CoarseMode mode : {CoarseMode::monolithic, CoarseMode::economic}) {
        const CoarseSpace coarse =
            extend_basis(p.sys.K, k_csc, p.mesh, p.dd, p.dofmap, phi, mode, 2);
        CHECK(coarse.extension_residual <= 1e-10);
        for (std::size_t c = 0; c < coarse.phi_cols.size(); ++c) {
            const bool col_is_u = coarse.meta[c].kind < 3;
            std::size_t on_interface = 0;
            for (const auto& [d, v] : coarse.phi_cols[c]) {
                const bool row_is_u = HexMesh::dof_field(d) < 3;
                CHECK(row_is_u == col_is_u);  // off-diagonal field blocks are zero
                if (p.dofmap.is_interface_dof[static_cast<std::size_t>(d)]) {
                    CHECK(v == 1.0);  // prescribed interface values exactly
                    ++on_interface;
                }
            }
            CHECK(on_interface == phi.cols[c].size());
        }
    }
}

TEST_CASE("economic extension ignores the coupling blocks") {
    Problem p = make_problem({4, 2, 2}, {2, 2, 1}, 1);
    const CsrMatrix k_csc = csr_transpose(p.sys.K);
    const PhiGamma phi = build_interface_values(p.dd, p.dofmap);
    const CoarseSpace eco =
        extend_basis(p.sys.K, k_csc, p.mesh, p.dd, p.dofmap, phi, CoarseMode::economic, 1);

    // Oracle: strip the coupling blocks from K, then the monolithic
    // extension through the stripped matrix must agree.
    std::vector<int> all(static_cast<std::size_t>(p.mesh.n_dofs));
    for (int d = 0; d < p.mesh.n_dofs; ++d) { all[static_cast<std::size_t>(d)] = d; }
    const CsrMatrix stripped = extract_submatrix_field_diag(p.sys.K, all);
    const CsrMatrix stripped_csc = csr_transpose(stripped);
    const CoarseSpace mono = extend_basis(stripped, stripped_csc, p.mesh, p.dd, p.dofmap, phi,
                                          CoarseMode::monolithic, 1);

    REQUIRE(eco.phi_cols.size() == mono.phi_cols.size());
    for (std::size_t c = 0; c < eco.phi_cols.size(); ++c) {
        REQUIRE(eco.phi_cols[c].size() == mono.phi_cols[c].size());
        for (std::size_t k = 0; k < eco.phi_cols[c].size(); ++k) {
            CHECK(eco.phi_cols[c][k].first == mono.phi_cols[c][k].first);
            CHECK(eco.phi_cols[c][k].second ==
                  doctest::Approx(mono.phi_cols[c][k].second).epsilon(1e-13));
        }
    }
}

TEST_CASE("coarse operator matches the dense triple product") {
    Problem p = make_problem({2, 1, 1}, {2, 1, 1}, 1);
    const CsrMatrix k_csc = csr_transpose(p.sys.K);
    const PhiGamma phi = build_interface_values(p.dd, p.dofmap);
    CoarseSpace coarse =
        extend_basis(p.sys.K, k_csc, p.mesh, p.dd, p.dofmap, phi, CoarseMode::monolithic, 1);
    build_coarse_operator(coarse, k_csc, 1);

    const int nc = coarse.n_cols();
    const int n = p.mesh.n_dofs;
    // Dense oracle.
    std::vector<double> phid(static_cast<std::size_t>(n) * static_cast<std::size_t>(nc), 0.0);
    for (int c = 0; c < nc; ++c) {
        for (const auto& [d, v] : coarse.phi_cols[static_cast<std::size_t>(c)]) {
            phid[static_cast<std::size_t>(d) * static_cast<std::size_t>(nc) +
                 static_cast<std::size_t>(c)] = v;
        }
    }
    const auto kd = testutil::to_dense(p.sys.K);
    std::vector<double> k0_ref(static_cast<std::size_t>(nc) * static_cast<std::size_t>(nc), 0.0);
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
            double s = 0.0;
            for (int r = 0; r < n; ++r) {
                if (phid[static_cast<std::size_t>(r) * static_cast<std::size_t>(nc) +
                         static_cast<std::size_t>(i)] == 0.0) {
                    continue;
                }
                double krj = 0.0;
                for (int c2 = 0; c2 < n; ++c2) {
                    krj += kd[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                              static_cast<std::size_t>(c2)] *
                           phid[static_cast<std::size_t>(c2) * static_cast<std::size_t>(nc) +
                                static_cast<std::size_t>(j)];
                }
                s += phid[static_cast<std::size_t>(r) * static_cast<std::size_t>(nc) +
                          static_cast<std::size_t>(i)] *
                     krj;
            }
            k0_ref[static_cast<std::size_t>(i) * static_cast<std::size_t>(nc) +
                   static_cast<std::size_t>(j)] = s;
        }
    }
    double scale = 0.0;
    for (double v : k0_ref) { scale = std::max(scale, std::abs(v)); }
    for (std::size_t k = 0; k < k0_ref.size(); ++k) {
        CHECK(std::abs(coarse.k0_dense[k] - k0_ref[k]) <= 1e-12 * scale);
    }
}

TEST_CASE("coarse operator symmetry under a symmetric K") {
    // Pure conduction system is symmetric.
    const HexMesh mesh = build_hex_mesh({4.0, 2.0, 1.0}, {4, 2, 1});
    DomainDecomposition dd = partition(mesh, {2, 1, 1});
    extend_overlap(mesh, dd, 1);
    classify_interface(mesh, dd, {});
    MaterialParams mat = default_material();
    mat.alpha_T = 0.0;
    mat.derive();
    std::vector<std::pair<int, double>> constraints;
    for (int n = 0; n < mesh.n_nodes; ++n) {
        for (int c = 0; c < 3; ++c) { constraints.emplace_back(HexMesh::dof(n, c), 0.0); }
    }
    const DofMap dofmap = build_dof_map(mesh, dd, constraints);
    SimulationState state = SimulationState::uniform(mesh.n_nodes, 20.0, 0.05);
    const BlockSystem sys = assemble(mesh, state, mat, constraints);
    const CsrMatrix k_csc = csr_transpose(sys.K);
    const PhiGamma phi = build_interface_values(dd, dofmap);
    CoarseSpace coarse = extend_basis(sys.K, k_csc, mesh, dd, dofmap, phi, CoarseMode::monolithic, 1);
    build_coarse_operator(coarse, k_csc, 1);
    const int nc = coarse.n_cols();
    double scale = 0.0;
    for (double v : coarse.k0_dense) { scale = std::max(scale, std::abs(v)); }
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
            CHECK(std::abs(coarse.k0_dense[static_cast<std::size_t>(i * nc + j)] -
                           coarse.k0_dense[static_cast<std::size_t>(j * nc + i)]) <=
                  1e-12 * scale);
        }
    }
}

TEST_CASE("economic coarse operator has exactly zero u-theta coupling") {
    Problem p = make_problem({4, 2, 2}, {2, 2, 1}, 1);
    const SchwarzPreconditioner prec =
        build_schwarz(PrecKind::egdsw, p.sys.K, p.mesh, p.dd, p.dofmap, 2);
    REQUIRE(prec.coarse.has_value());
    const auto& coarse = *prec.coarse;
    const int nc = coarse.n_cols();
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
            const bool iu = coarse.meta[static_cast<std::size_t>(i)].kind < 3;
            const bool ju = coarse.meta[static_cast<std::size_t>(j)].kind < 3;
            if (iu != ju) {
                CHECK(coarse.k0_dense[static_cast<std::size_t>(i * nc + j)] == 0.0);
            }
        }
    }
}

TEST_CASE("two-level apply: degenerate coarse space reduces to one level") {
    Problem p = make_problem({4, 2, 1}, {2, 1, 1}, 1);
    const OneLevelAS one = build_one_level(p.sys.K, p.mesh, p.dd, 1);
    CoarseSpace empty;
    empty.n_dofs = p.mesh.n_dofs;
    SchwarzWorkspace ws;
    const auto r = testutil::random_vector(static_cast<std::size_t>(p.mesh.n_dofs), 31);
    std::vector<double> z1(r.size()), z2(r.size());
    apply_two_level(one, empty, r, z1, ws, 1);
    apply_one_level(one, r, z2, ws, 1);
    CHECK(z1 == z2);
}

TEST_CASE("two-level apply matches the dense oracle and is linear") {
    Problem p = make_problem({2, 2, 1}, {2, 2, 1}, 1);
    const SchwarzPreconditioner prec =
        build_schwarz(PrecKind::gdsw, p.sys.K, p.mesh, p.dd, p.dofmap, 1);
    REQUIRE(prec.coarse.has_value());
    SchwarzWorkspace ws;
    const auto r = testutil::random_vector(static_cast<std::size_t>(p.mesh.n_dofs), 41);
    std::vector<double> z(r.size());
    prec.apply(r, z, ws, 1);

    // Dense oracle: z = Phi K0^{-1} Phi^T r + sum_i R_i^T K_i^{-1} R_i r.
    auto ref = dense_apply_one_level(p, prec.one_level, r);
    const auto& coarse = *prec.coarse;
    const int nc = coarse.n_cols();
    std::vector<double> ct(static_cast<std::size_t>(nc), 0.0);
    for (int c = 0; c < nc; ++c) {
        for (const auto& [d, v] : coarse.phi_cols[static_cast<std::size_t>(c)]) {
            ct[static_cast<std::size_t>(c)] += v * r[static_cast<std::size_t>(d)];
        }
    }
    const auto y = testutil::dense_solve(coarse.k0_dense, ct);
    for (int c = 0; c < nc; ++c) {
        for (const auto& [d, v] : coarse.phi_cols[static_cast<std::size_t>(c)]) {
            ref[static_cast<std::size_t>(d)] += v * y[static_cast<std::size_t>(c)];
        }
    }
    CHECK(testutil::rel_err(z, ref) < 1e-9);

    // Linearity.
    std::vector<double> r3(r.size()), z3(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) { r3[i] = 3.0 * r[i]; }
    prec.apply(r3, z3, ws, 1);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(z3[i] == doctest::Approx(3.0 * z[i]).epsilon(1e-11));
    }
}

TEST_CASE("each preconditioner kind drives GMRES to the direct solution") {
    Problem p = make_problem({4, 4, 2}, {2, 2, 1}, 1);
    const auto x_ref = testutil::dense_solve(testutil::to_dense(p.sys.K), p.sys.R);
    const LinearOperator apply_a = [&](std::span<const double> x, std::span<double> y) {
        p.sys.K.spmv(x, y);
    };
    for (PrecKind kind :
         {PrecKind::none, PrecKind::one_level, PrecKind::gdsw, PrecKind::egdsw}) {
        const SchwarzPreconditioner prec =
            build_schwarz(kind, p.sys.K, p.mesh, p.dd, p.dofmap, 2);
        std::vector<double> x(static_cast<std::size_t>(p.mesh.n_dofs));
        GmresConfig cfg;
        cfg.rtol = 1e-10;
        cfg.max_iters = 2000;
        const GmresStats stats = gmres(apply_a, prec.as_operator(1), p.sys.R, x, cfg);
        CHECK(stats.converged);
        CHECK(testutil::rel_err(x, x_ref) < 1e-6);
    }
}

TEST_CASE("thread count does not change the applied preconditioner") {
    Problem p = make_problem({4, 4, 2}, {2, 2, 2}, 1);
    const SchwarzPreconditioner a = build_schwarz(PrecKind::gdsw, p.sys.K, p.mesh, p.dd, p.dofmap, 1);
    const SchwarzPreconditioner b = build_schwarz(PrecKind::gdsw, p.sys.K, p.mesh, p.dd, p.dofmap, 4);
    const auto r = testutil::random_vector(static_cast<std::size_t>(p.mesh.n_dofs), 77);
    SchwarzWorkspace wa, wb;
    std::vector<double> za(r.size()), zb(r.size());
    a.apply(r, za, wa, 1);
    b.apply(r, zb, wb, 4);
    CHECK(za == zb);  // bitwise
}
