#include "weldsim/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "weldsim/errors.hpp"
#include "weldsim/ordering.hpp"
#include "weldsim/parallel.hpp"

namespace weldsim {

std::string to_string(PrecKind kind) {
    switch (kind) {
        case PrecKind::none: return "none";
        case PrecKind::one_level: return "one_level";
        case PrecKind::gdsw: return "gdsw";
        case PrecKind::egdsw: return "egdsw";
    }
    return "?";
}

PrecKind prec_kind_from_string(const std::string& s) {
    if (s == "none") { return PrecKind::none; }
    if (s == "one_level") { return PrecKind::one_level; }
    if (s == "gdsw") { return PrecKind::gdsw; }
    if (s == "egdsw") { return PrecKind::egdsw; }
    throw std::invalid_argument("unknown preconditioner kind: " + s +
                                " (expected none|one_level|gdsw|egdsw)");
}

namespace {

// Node-lattice nested-dissection DoF permutation for a set of global DoFs
// (all 4 DoFs of each node present, ascending).
std::vector<int> nd_perm_for_dofs(const HexMesh& mesh, std::span<const int> dofs) {
    const int n_local_nodes = static_cast<int>(dofs.size()) / 4;
    std::vector<std::array<int, 3>> coords(static_cast<std::size_t>(n_local_nodes));
    for (int i = 0; i < n_local_nodes; ++i) {
        coords[static_cast<std::size_t>(i)] =
            mesh.node_ijk(HexMesh::dof_node(dofs[static_cast<std::size_t>(4 * i)]));
    }
    return expand_block_perm(lattice_nd_order(coords), 4);
}

} // namespace

OneLevelAS build_one_level(const CsrMatrix& k, const HexMesh& mesh,
                           const DomainDecomposition& dd, int n_threads) {
    OneLevelAS p;
    p.restrictions = build_restrictions(dd);
    p.factors.resize(p.restrictions.size());

    std::vector<std::string> failures(p.restrictions.size());
    parallel_for(p.restrictions.size(), n_threads, [&](std::size_t i) {
        const auto& idx = p.restrictions[i];
        const CsrMatrix ki = extract_submatrix(k, idx);
        LuOptions opt;
        opt.perm = nd_perm_for_dofs(mesh, idx);
        try {
            p.factors[i] = lu_factor(ki, std::move(opt));
        } catch (const SingularMatrixError& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (!failures[i].empty()) {
            throw SingularMatrixError(
                static_cast<int>(i), "build_one_level: singular local matrix K_" +
                                         std::to_string(i) + " (floating subdomain?): " +
                                         failures[i]);
        }
    }
    return p;
}

void apply_one_level(const OneLevelAS& p, std::span<const double> r, std::span<double> z,
                     SchwarzWorkspace& ws, int n_threads) {
    const std::size_t n_sub = p.restrictions.size();
    ws.local_r.resize(n_sub);
    ws.local_z.resize(n_sub);
    ws.scratch.resize(n_sub);

    parallel_for(n_sub, n_threads, [&](std::size_t i) {
        const auto& idx = p.restrictions[i];
        auto& lr = ws.local_r[i];
        auto& lz = ws.local_z[i];
        lr.resize(idx.size());
        lz.resize(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            lr[j] = r[static_cast<std::size_t>(idx[j])];
        }
        p.factors[i].solve(lr, lz, ws.scratch[i]);
    });

    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t i = 0; i < n_sub; ++i) {
        const auto& idx = p.restrictions[i];
        const auto& lz = ws.local_z[i];
        for (std::size_t j = 0; j < idx.size(); ++j) {
            z[static_cast<std::size_t>(idx[j])] += lz[j];
        }
    }
}

PhiGamma build_interface_values(const DomainDecomposition& dd, const DofMap& dofmap) {
    PhiGamma phi;
    for (std::size_t j = 0; j < dd.components.size(); ++j) {
        const auto& comp = dd.components[j];
        for (int kind = 0; kind < 4; ++kind) {
            std::vector<std::pair<int, double>> col;
            col.reserve(comp.nodes.size());
            for (int node : comp.nodes) {
                const int d = HexMesh::dof(node, kind);
                if (!dofmap.is_constrained[static_cast<std::size_t>(d)]) {
                    col.emplace_back(d, 1.0);
                }
            }
            const CoarseColumnMeta meta{static_cast<int>(j), kind};
            if (col.empty()) {
                phi.dropped.push_back(meta);
            } else {
                phi.cols.push_back(std::move(col));
                phi.meta.push_back(meta);
            }
        }
    }
    return phi;
}

namespace {

// Interior DoFs grouped by owning subdomain, with local numbering and
// factorized interior blocks (K_II decouples over subdomain interiors
// because interface nodes separate them).
struct InteriorBlocks {
    std::vector<int> dof_subdomain;  ///< owning subdomain per DoF, -1 if not interior
    std::vector<int> dof_local;      ///< local index within the block
    std::vector<std::vector<int>> block_dofs;
    std::vector<LuFactors> factors;
};

InteriorBlocks build_interior_blocks(const CsrMatrix& k, const HexMesh& mesh,
                                     const DomainDecomposition& dd, const DofMap& dofmap,
                                     CoarseMode mode, int n_threads) {
    InteriorBlocks blocks;
    blocks.dof_subdomain.assign(static_cast<std::size_t>(mesh.n_dofs), -1);
    blocks.dof_local.assign(static_cast<std::size_t>(mesh.n_dofs), -1);
    blocks.block_dofs.resize(static_cast<std::size_t>(dd.n_subdomains));

    for (int node = 0; node < mesh.n_nodes; ++node) {
        const auto& sharing = dd.node_sharing[static_cast<std::size_t>(node)];
        if (sharing.size() != 1) { continue; }  // interface (or excluded) node
        const int s = sharing.front();
        for (int c = 0; c < 4; ++c) {
            const int d = HexMesh::dof(node, c);
            if (dofmap.is_constrained[static_cast<std::size_t>(d)] ||
                dofmap.is_interface_dof[static_cast<std::size_t>(d)]) {
                continue;
            }
            blocks.dof_subdomain[static_cast<std::size_t>(d)] = s;
            blocks.dof_local[static_cast<std::size_t>(d)] =
                static_cast<int>(blocks.block_dofs[static_cast<std::size_t>(s)].size());
            blocks.block_dofs[static_cast<std::size_t>(s)].push_back(d);
        }
    }

    blocks.factors.resize(static_cast<std::size_t>(dd.n_subdomains));
    std::vector<std::string> failures(static_cast<std::size_t>(dd.n_subdomains));
    parallel_for(static_cast<std::size_t>(dd.n_subdomains), n_threads, [&](std::size_t s) {
        const auto& dofs = blocks.block_dofs[s];
        if (dofs.empty()) { return; }
        const CsrMatrix kii = mode == CoarseMode::monolithic
                                  ? extract_submatrix(k, dofs)
                                  : extract_submatrix_field_diag(k, dofs);
        LuOptions opt;
        // Interior blocks need not contain whole node blocks (per-field
        // constraints remove single DoFs), so order by node lattice
        // coordinates at DoF granularity.
        std::vector<std::array<int, 3>> coords(dofs.size());
        for (std::size_t i = 0; i < dofs.size(); ++i) {
            coords[i] = mesh.node_ijk(HexMesh::dof_node(dofs[i]));
        }
        opt.perm = lattice_nd_order(coords);
        try {
            blocks.factors[s] = lu_factor(kii, std::move(opt));
        } catch (const SingularMatrixError& e) {
            failures[s] = e.what();
        }
    });
    for (std::size_t s = 0; s < failures.size(); ++s) {
        if (!failures[s].empty()) {
            throw SingularMatrixError(static_cast<int>(s),
                                      "extend_basis: singular interior block of subdomain " +
                                          std::to_string(s) + ": " + failures[s]);
        }
    }
    return blocks;
}

} // namespace

CoarseSpace extend_basis(const CsrMatrix& k, const CsrMatrix& k_csc, const HexMesh& mesh,
                         const DomainDecomposition& dd, const DofMap& dofmap,
                         const PhiGamma& phi_gamma, CoarseMode mode, int n_threads) {
    CoarseSpace coarse;
    coarse.mode = mode;
    coarse.meta = phi_gamma.meta;
    coarse.dropped = phi_gamma.dropped;
    coarse.n_dofs = mesh.n_dofs;
    coarse.phi_cols.resize(phi_gamma.cols.size());

    const InteriorBlocks blocks = build_interior_blocks(k, mesh, dd, dofmap, mode, n_threads);

    std::vector<double> res_sq(phi_gamma.cols.size(), 0.0);
    std::vector<double> rhs_sq(phi_gamma.cols.size(), 0.0);

    parallel_for(phi_gamma.cols.size(), n_threads, [&](std::size_t c) {
        const auto& gamma_col = phi_gamma.cols[c];
        const int field = phi_gamma.meta[c].kind;  // 0..2 u-type, 3 theta-type
        const bool col_is_u = field < 3;

        // Gather -K_IG phi_G per touched interior block. The economic mode
        // extends through blockdiag(K_uu, K_tt): only same-field couplings
        // contribute to the right-hand side.
        std::map<int, std::vector<double>> rhs;
        for (const auto& [gdof, value] : gamma_col) {
            for (std::int64_t p = k_csc.row_ptr[static_cast<std::size_t>(gdof)];
                 p < k_csc.row_ptr[static_cast<std::size_t>(gdof) + 1]; ++p) {
                const int r = k_csc.col[static_cast<std::size_t>(p)];
                const int s = blocks.dof_subdomain[static_cast<std::size_t>(r)];
                if (s < 0) { continue; }
                if (mode == CoarseMode::economic && (r % 4 < 3) != col_is_u) { continue; }
                auto& b = rhs[s];
                if (b.empty()) { b.resize(blocks.block_dofs[static_cast<std::size_t>(s)].size(), 0.0); }
                b[static_cast<std::size_t>(blocks.dof_local[static_cast<std::size_t>(r)])] -=
                    k_csc.val[static_cast<std::size_t>(p)] * value;
            }
        }

        auto& col = coarse.phi_cols[c];
        col = gamma_col;  // interface rows carry the prescribed values exactly

        std::vector<double> x, scratch, check;
        for (auto& [s, b] : rhs) {
            const auto& dofs = blocks.block_dofs[static_cast<std::size_t>(s)];
            x.resize(b.size());
            blocks.factors[static_cast<std::size_t>(s)].solve(b, x, scratch);

            // Accumulate the extension residual ||K_II x - b|| of the raw
            // solve (before any field filtering of the stored column).
            check.assign(b.size(), 0.0);
            for (std::size_t i = 0; i < dofs.size(); ++i) {
                const int gr = dofs[i];
                const bool row_is_u = gr % 4 < 3;
                for (std::int64_t p = k.row_ptr[static_cast<std::size_t>(gr)];
                     p < k.row_ptr[static_cast<std::size_t>(gr) + 1]; ++p) {
                    const int gc = k.col[static_cast<std::size_t>(p)];
                    if (blocks.dof_subdomain[static_cast<std::size_t>(gc)] != s) { continue; }
                    if (mode == CoarseMode::economic && (gc % 4 < 3) != row_is_u) { continue; }
                    check[i] += k.val[static_cast<std::size_t>(p)] *
                                x[static_cast<std::size_t>(
                                    blocks.dof_local[static_cast<std::size_t>(gc)])];
                }
            }
            for (std::size_t i = 0; i < b.size(); ++i) {
                const double d = check[i] - b[i];
                res_sq[c] += d * d;
                rhs_sq[c] += b[i] * b[i];
            }

            // Store the interior values; the monolithic mode removes the
            // off-diagonal field blocks here (u rows of theta columns and
            // vice versa), the economic mode produced them zero anyway.
            for (std::size_t i = 0; i < dofs.size(); ++i) {
                if (x[i] == 0.0) { continue; }
                const bool row_is_u = dofs[i] % 4 < 3;
                if (row_is_u != col_is_u) { continue; }
                col.emplace_back(dofs[i], x[i]);
            }
        }
        std::sort(col.begin(), col.end());
    });

    double rs = 0.0, bs = 0.0;
    for (std::size_t c = 0; c < res_sq.size(); ++c) {
        rs += res_sq[c];
        bs += rhs_sq[c];
    }
    coarse.extension_residual = bs > 0.0 ? std::sqrt(rs / bs) : 0.0;
    return coarse;
}

void build_coarse_operator(CoarseSpace& coarse, const CsrMatrix& k_csc, int n_threads) {
    const int nc = coarse.n_cols();
    if (nc == 0) { return; }

    // Phi rows for the Phi^T (K Phi) product.
    std::vector<std::vector<std::pair<int, double>>> phi_rows(
        static_cast<std::size_t>(coarse.n_dofs));
    for (int j = 0; j < nc; ++j) {
        for (const auto& [d, v] : coarse.phi_cols[static_cast<std::size_t>(j)]) {
            phi_rows[static_cast<std::size_t>(d)].emplace_back(j, v);
        }
    }

    std::vector<double> k0(static_cast<std::size_t>(nc) * static_cast<std::size_t>(nc), 0.0);
    const bool economic = coarse.mode == CoarseMode::economic;

    parallel_for(static_cast<std::size_t>(nc), n_threads, [&](std::size_t j) {
        // w = K phi_j (K-hat in economic mode), accumulated sparsely.
        std::vector<double> w(static_cast<std::size_t>(coarse.n_dofs), 0.0);
        std::vector<int> touched;
        for (const auto& [d, v] : coarse.phi_cols[j]) {
            const bool col_is_u = d % 4 < 3;
            for (std::int64_t p = k_csc.row_ptr[static_cast<std::size_t>(d)];
                 p < k_csc.row_ptr[static_cast<std::size_t>(d) + 1]; ++p) {
                const int r = k_csc.col[static_cast<std::size_t>(p)];
                if (economic && (r % 4 < 3) != col_is_u) { continue; }
                if (w[static_cast<std::size_t>(r)] == 0.0) { touched.push_back(r); }
                w[static_cast<std::size_t>(r)] += k_csc.val[static_cast<std::size_t>(p)] * v;
            }
        }
        for (const int r : touched) {
            // Consume-and-clear so that a row listed twice (an exact-zero
            // cancellation followed by another update) is not double counted.
            const double wv = w[static_cast<std::size_t>(r)];
            w[static_cast<std::size_t>(r)] = 0.0;
            if (wv == 0.0) { continue; }
            for (const auto& [i, pv] : phi_rows[static_cast<std::size_t>(r)]) {
                k0[j * static_cast<std::size_t>(nc) + static_cast<std::size_t>(i)] += pv * wv;
            }
        }
    });

    // Dense factorization (row i, column j) from the column-major product.
    coarse.k0_dense.assign(k0.size(), 0.0);
    std::vector<Triplet> triplets;
    triplets.reserve(k0.size());
    for (int j = 0; j < nc; ++j) {
        for (int i = 0; i < nc; ++i) {
            const double v = k0[static_cast<std::size_t>(j) * static_cast<std::size_t>(nc) +
                                static_cast<std::size_t>(i)];
            coarse.k0_dense[static_cast<std::size_t>(i) * static_cast<std::size_t>(nc) +
                            static_cast<std::size_t>(j)] = v;
            if (v != 0.0) { triplets.push_back({i, j, v}); }
        }
    }
    LuOptions opt;
    opt.dense_threshold = nc;  // the coarse problem is solved densely
    try {
        coarse.k0 = lu_factor(csr_from_triplets(nc, nc, std::move(triplets)), std::move(opt));
    } catch (const SingularMatrixError& e) {
        const auto& m = coarse.meta[static_cast<std::size_t>(
            std::min(e.pivot_index(), nc - 1))];
        throw SingularMatrixError(
            e.pivot_index(),
            std::string("build_coarse_operator: singular coarse operator near column ") +
                std::to_string(e.pivot_index()) + " (component " + std::to_string(m.component) +
                ", kind " + std::to_string(m.kind) + "): " + e.what());
    }
}

void apply_two_level(const OneLevelAS& one_level, const CoarseSpace& coarse,
                     std::span<const double> r, std::span<double> z, SchwarzWorkspace& ws,
                     int n_threads) {
    apply_one_level(one_level, r, z, ws, n_threads);

    const int nc = coarse.n_cols();
    if (nc == 0) { return; }
    ws.coarse_in.resize(static_cast<std::size_t>(nc));
    ws.coarse_out.resize(static_cast<std::size_t>(nc));
    for (int j = 0; j < nc; ++j) {
        double s = 0.0;
        for (const auto& [d, v] : coarse.phi_cols[static_cast<std::size_t>(j)]) {
            s += v * r[static_cast<std::size_t>(d)];
        }
        ws.coarse_in[static_cast<std::size_t>(j)] = s;
    }
    coarse.k0.solve(ws.coarse_in, ws.coarse_out, ws.apply_tmp);
    for (int j = 0; j < nc; ++j) {
        const double yj = ws.coarse_out[static_cast<std::size_t>(j)];
        if (yj == 0.0) { continue; }
        for (const auto& [d, v] : coarse.phi_cols[static_cast<std::size_t>(j)]) {
            z[static_cast<std::size_t>(d)] += v * yj;
        }
    }
}

SchwarzWorkspace SchwarzPreconditioner::make_workspace() const { return {}; }

void SchwarzPreconditioner::apply(std::span<const double> r, std::span<double> z,
                                  SchwarzWorkspace& ws, int n_threads) const {
    switch (kind) {
        case PrecKind::none:
            std::copy(r.begin(), r.end(), z.begin());
            return;
        case PrecKind::one_level:
            apply_one_level(one_level, r, z, ws, n_threads);
            return;
        case PrecKind::gdsw:
        case PrecKind::egdsw:
            apply_two_level(one_level, *coarse, r, z, ws, n_threads);
            return;
    }
}

LinearOperator SchwarzPreconditioner::as_operator(int n_threads) const {
    if (kind == PrecKind::none) { return {}; }
    auto ws = std::make_shared<SchwarzWorkspace>();
    return [this, ws, n_threads](std::span<const double> r, std::span<double> z) {
        apply(r, z, *ws, n_threads);
    };
}

LinearOperator make_prec_operator(std::shared_ptr<const SchwarzPreconditioner> prec,
                                  int n_threads) {
    if (!prec || prec->kind == PrecKind::none) { return {}; }
    auto ws = std::make_shared<SchwarzWorkspace>();
    return [prec, ws, n_threads](std::span<const double> r, std::span<double> z) {
        prec->apply(r, z, *ws, n_threads);
    };
}

std::string SchwarzPreconditioner::describe() const {
    std::ostringstream os;
    os << "prec " << to_string(kind) << " subdomains " << one_level.restrictions.size();
    if (coarse) {
        os << " coarse_cols " << coarse->n_cols() << " dropped " << coarse->dropped.size()
           << " extension_residual " << coarse->extension_residual;
    }
    return os.str();
}

SchwarzPreconditioner build_schwarz(PrecKind kind, const CsrMatrix& k, const HexMesh& mesh,
                                    const DomainDecomposition& dd, const DofMap& dofmap,
                                    int n_threads) {
    SchwarzPreconditioner p;
    p.kind = kind;
    p.n_dofs = k.n_rows;
    if (kind == PrecKind::none) { return p; }

    p.one_level = build_one_level(k, mesh, dd, n_threads);
    if (kind == PrecKind::one_level) { return p; }

    const CsrMatrix k_csc = csr_transpose(k);
    const CoarseMode mode =
        kind == PrecKind::gdsw ? CoarseMode::monolithic : CoarseMode::economic;
    const PhiGamma phi_gamma = build_interface_values(dd, dofmap);
    p.coarse = extend_basis(k, k_csc, mesh, dd, dofmap, phi_gamma, mode, n_threads);
    build_coarse_operator(*p.coarse, k_csc, n_threads);
    return p;
}

} // namespace weldsim
