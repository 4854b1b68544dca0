#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "weldsim/errors.hpp"
#include "weldsim/ordering.hpp"
#include "weldsim/sparse_lu.hpp"

using namespace weldsim;

namespace {

// Random diagonally dominant sparse fixture (always nonsingular).
CsrMatrix random_dd_matrix(int n, unsigned seed, int extra_per_row = 4) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Triplet> t;
    for (int r = 0; r < n; ++r) {
        double off = 0.0;
        for (int k = 0; k < extra_per_row; ++k) {
            const int c = static_cast<int>(rng() % static_cast<unsigned>(n));
            const double v = dist(rng);
            if (c != r) {
                t.push_back({r, c, v});
                off += std::abs(v);
            }
        }
        t.push_back({r, r, off + 1.0 + std::abs(dist(rng))});
    }
    return csr_from_triplets(n, n, t);
}

LuOptions sparse_options() {
    LuOptions opt;
    opt.dense_threshold = 0;  // force the sparse path in these tests
    return opt;
}

} // namespace

TEST_CASE("identity solve returns b") {
    std::vector<Triplet> t;
    for (int i = 0; i < 6; ++i) { t.push_back({i, i, 1.0}); }
    const LuFactors f = lu_factor(csr_from_triplets(6, 6, t), sparse_options());
    const auto b = testutil::random_vector(6, 1);
    const auto x = f.solve(b);
    for (std::size_t i = 0; i < b.size(); ++i) { CHECK(x[i] == doctest::Approx(b[i])); }
}

TEST_CASE("antidiagonal permutation requires pivoting") {
    const CsrMatrix a = csr_from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}});
    for (int dense_threshold : {0, 500}) {
        LuOptions opt;
        opt.dense_threshold = dense_threshold;
        const LuFactors f = lu_factor(a, opt);
        const std::vector<double> b = {3.0, 4.0};
        const auto x = f.solve(b);
        CHECK(x[0] == doctest::Approx(4.0));
        CHECK(x[1] == doctest::Approx(3.0));
    }
}

TEST_CASE("random 50x50 fixture matches the dense oracle") {
    const CsrMatrix a = random_dd_matrix(50, 77);
    const auto b = testutil::random_vector(50, 78);
    const auto x_ref = testutil::dense_solve(testutil::to_dense(a), b);
    for (int dense_threshold : {0, 500}) {
        LuOptions opt;
        opt.dense_threshold = dense_threshold;
        const auto x = lu_factor(a, opt).solve(b);
        CHECK(testutil::rel_err(x, x_ref) < 1e-10);
    }
}

TEST_CASE("solve-spmv round trip at 1e-8") {
    for (unsigned seed : {10u, 20u, 30u}) {
        const int n = 120;
        const CsrMatrix a = random_dd_matrix(n, seed, 6);
        const auto x_ref = testutil::random_vector(static_cast<std::size_t>(n), seed + 1);
        std::vector<double> b(static_cast<std::size_t>(n));
        a.spmv(x_ref, b);
        const auto x = lu_factor(a, sparse_options()).solve(b);
        CHECK(testutil::rel_err(x, x_ref) < 1e-8);
    }
}

TEST_CASE("residual bound on a well conditioned fixture") {
    const int n = 200;
    const CsrMatrix a = random_dd_matrix(n, 4242, 8);
    const auto b = testutil::random_vector(static_cast<std::size_t>(n), 4243);
    const auto x = lu_factor(a, sparse_options()).solve(b);
    std::vector<double> ax(static_cast<std::size_t>(n));
    a.spmv(x, ax);
    double norm_a = 0.0;
    for (double v : a.val) { norm_a = std::max(norm_a, std::abs(v)); }
    double norm_x = 0.0, norm_b = 0.0, resid = 0.0;
    for (int i = 0; i < n; ++i) {
        norm_x = std::max(norm_x, std::abs(x[static_cast<std::size_t>(i)]));
        norm_b = std::max(norm_b, std::abs(b[static_cast<std::size_t>(i)]));
        resid = std::max(resid, std::abs(ax[static_cast<std::size_t>(i)] -
                                         b[static_cast<std::size_t>(i)]));
    }
    CHECK(resid <= 1e-10 * (norm_a * norm_x + norm_b));
}

TEST_CASE("exact singularity reported with the pivot index") {
    // Column 1 is identically zero.
    const CsrMatrix a = csr_from_triplets(3, 3, {{0, 0, 1.0}, {1, 0, 2.0}, {2, 2, 3.0}});
    CHECK_THROWS_AS(lu_factor(a, sparse_options()), SingularMatrixError);
    CHECK_THROWS_AS(lu_factor(a), SingularMatrixError);  // dense path too
    try {
        lu_factor(a, sparse_options());
    } catch (const SingularMatrixError& e) {
        CHECK(e.pivot_index() >= 0);
    }
}

TEST_CASE("fill-reducing permutation changes nothing numerically") {
    const int nx = 6, ny = 5, nz = 4;
    // 7-point grid Laplacian plus a shift.
    std::vector<Triplet> t;
    std::vector<std::array<int, 3>> coords;
    auto id = [&](int i, int j, int k) { return i + nx * (j + ny * k); };
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                coords.push_back({i, j, k});
                const int r = id(i, j, k);
                t.push_back({r, r, 6.5});
                if (i > 0) { t.push_back({r, id(i - 1, j, k), -1.0}); }
                if (i + 1 < nx) { t.push_back({r, id(i + 1, j, k), -1.0}); }
                if (j > 0) { t.push_back({r, id(i, j - 1, k), -1.0}); }
                if (j + 1 < ny) { t.push_back({r, id(i, j + 1, k), -1.0}); }
                if (k > 0) { t.push_back({r, id(i, j, k - 1), -1.0}); }
                if (k + 1 < nz) { t.push_back({r, id(i, j, k + 1), -1.0}); }
            }
        }
    }
    const int n = nx * ny * nz;
    const CsrMatrix a = csr_from_triplets(n, n, t);
    const auto b = testutil::random_vector(static_cast<std::size_t>(n), 9);
    const auto x_ref = testutil::dense_solve(testutil::to_dense(a), b);

    LuOptions natural = sparse_options();
    LuOptions nd = sparse_options();
    nd.perm = lattice_nd_order(coords);
    const LuFactors f_nat = lu_factor(a, natural);
    const LuFactors f_nd = lu_factor(a, nd);
    CHECK(testutil::rel_err(f_nat.solve(b), x_ref) < 1e-10);
    CHECK(testutil::rel_err(f_nd.solve(b), x_ref) < 1e-10);
    // The ordering exists to reduce fill.
    CHECK(f_nd.nnz_l() + f_nd.nnz_u() <= f_nat.nnz_l() + f_nat.nnz_u());
}

TEST_CASE("block permutation expansion") {
    const auto p = expand_block_perm({2, 0, 1}, 4);
    CHECK(p == std::vector<int>{8, 9, 10, 11, 0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("determinism: identical inputs give identical factors") {
    const CsrMatrix a = random_dd_matrix(80, 5);
    const auto b = testutil::random_vector(80, 6);
    const auto x1 = lu_factor(a, sparse_options()).solve(b);
    const auto x2 = lu_factor(a, sparse_options()).solve(b);
    CHECK(x1 == x2);  // bitwise
}
