#include "weldsim/assembly.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>

#include "weldsim/element_kernel.hpp"
#include "weldsim/errors.hpp"
#include "weldsim/parallel.hpp"

namespace weldsim {

AssemblyWorkspace::AssemblyWorkspace(const HexMesh& mesh) {
    // Exact Q1 sparsity: node pairs within the 27-neighborhood, expanded to
    // 4x4 DoF blocks.
    const auto nn = mesh.nodes_per_axis();
    pattern.n_rows = mesh.n_dofs;
    pattern.n_cols = mesh.n_dofs;
    pattern.row_ptr.assign(static_cast<std::size_t>(mesh.n_dofs) + 1, 0);

    std::vector<int> neighbors;
    neighbors.reserve(27);
    // Count pass.
    for (int iz = 0; iz < nn[2]; ++iz) {
        for (int iy = 0; iy < nn[1]; ++iy) {
            for (int ix = 0; ix < nn[0]; ++ix) {
                int count = 0;
                for (int dz = -1; dz <= 1; ++dz) {
                    for (int dy = -1; dy <= 1; ++dy) {
                        for (int dx = -1; dx <= 1; ++dx) {
                            const int jx = ix + dx, jy = iy + dy, jz = iz + dz;
                            if (jx < 0 || jy < 0 || jz < 0 || jx >= nn[0] || jy >= nn[1] ||
                                jz >= nn[2]) {
                                continue;
                            }
                            ++count;
                        }
                    }
                }
                const int node = mesh.node_id(ix, iy, iz);
                for (int c = 0; c < 4; ++c) {
                    pattern.row_ptr[static_cast<std::size_t>(HexMesh::dof(node, c)) + 1] =
                        static_cast<std::int64_t>(4 * count);
                }
            }
        }
    }
    for (std::size_t r = 0; r < static_cast<std::size_t>(mesh.n_dofs); ++r) {
        pattern.row_ptr[r + 1] += pattern.row_ptr[r];
    }
    pattern.col.resize(static_cast<std::size_t>(pattern.row_ptr.back()));
    pattern.val.assign(static_cast<std::size_t>(pattern.row_ptr.back()), 0.0);

    // Fill pass: columns ascend because the neighbor nodes are enumerated in
    // lexicographic order and DoFs are node-blocked.
    for (int iz = 0; iz < nn[2]; ++iz) {
        for (int iy = 0; iy < nn[1]; ++iy) {
            for (int ix = 0; ix < nn[0]; ++ix) {
                neighbors.clear();
                for (int dz = -1; dz <= 1; ++dz) {
                    for (int dy = -1; dy <= 1; ++dy) {
                        for (int dx = -1; dx <= 1; ++dx) {
                            const int jx = ix + dx, jy = iy + dy, jz = iz + dz;
                            if (jx < 0 || jy < 0 || jz < 0 || jx >= nn[0] || jy >= nn[1] ||
                                jz >= nn[2]) {
                                continue;
                            }
                            neighbors.push_back(mesh.node_id(jx, jy, jz));
                        }
                    }
                }
                std::sort(neighbors.begin(), neighbors.end());
                const int node = mesh.node_id(ix, iy, iz);
                for (int c = 0; c < 4; ++c) {
                    auto pos = pattern.row_ptr[static_cast<std::size_t>(HexMesh::dof(node, c))];
                    for (int m : neighbors) {
                        for (int cc = 0; cc < 4; ++cc) {
                            pattern.col[static_cast<std::size_t>(pos++)] = HexMesh::dof(m, cc);
                        }
                    }
                }
            }
        }
    }

    // 2x2x2 element coloring: same-color elements share no node, so their
    // scatters never race and the per-entry accumulation order is the fixed
    // color order regardless of the thread count.
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto ijk = mesh.elem_ijk(e);
        const int color = (ijk[0] % 2) + 2 * (ijk[1] % 2) + 4 * (ijk[2] % 2);
        color_elems[static_cast<std::size_t>(color)].push_back(e);
    }
}

namespace {

void gather_element(const HexMesh& mesh, const SimulationState& state, int e, ElementInputs& in) {
    const auto& conn = mesh.elem_conn[static_cast<std::size_t>(e)];
    for (int a = 0; a < 8; ++a) {
        const int node = conn[static_cast<std::size_t>(a)];
        in.coords[static_cast<std::size_t>(a)] = mesh.node_coords[static_cast<std::size_t>(node)];
        for (int d = 0; d < 3; ++d) {
            in.u[static_cast<std::size_t>(3 * a + d)] =
                state.u_cur[static_cast<std::size_t>(3 * node + d)];
            in.u_old[static_cast<std::size_t>(3 * a + d)] =
                state.u_n[static_cast<std::size_t>(3 * node + d)];
        }
        in.theta[static_cast<std::size_t>(a)] = state.theta_cur[static_cast<std::size_t>(node)];
        in.theta_old[static_cast<std::size_t>(a)] = state.theta_n[static_cast<std::size_t>(node)];
    }
}

} // namespace

BlockSystem assemble(const HexMesh& mesh, const SimulationState& state, const MaterialParams& mat,
                     const std::vector<std::pair<int, double>>& constraints,
                     AssemblyWorkspace& ws, int n_threads) {
    if (static_cast<int>(state.u_cur.size()) != 3 * mesh.n_nodes ||
        static_cast<int>(state.theta_cur.size()) != mesh.n_nodes) {
        throw std::invalid_argument("assemble: state size does not match mesh");
    }

    BlockSystem sys;
    sys.K = ws.pattern;  // copies the pattern, values start at zero
    std::fill(sys.K.val.begin(), sys.K.val.end(), 0.0);
    sys.R.assign(static_cast<std::size_t>(mesh.n_dofs), 0.0);

    std::mutex error_mutex;
    for (const auto& elems : ws.color_elems) {
        std::string error;
        parallel_for(elems.size(), n_threads, [&](std::size_t t) {
            const int e = elems[t];
            ElementInputs in;
            gather_element(mesh, state, e, in);
            ElementKernelOutput out;
            try {
                out = element_kernel(in, mat, state.dt);
            } catch (const DegenerateElementError& err) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (error.empty()) { error = "element " + std::to_string(e) + ": " + err.what(); }
                return;
            }
            const auto& conn = mesh.elem_conn[static_cast<std::size_t>(e)];
            for (int a = 0; a < 8; ++a) {
                for (int ca = 0; ca < 4; ++ca) {
                    const int gr = HexMesh::dof(conn[static_cast<std::size_t>(a)], ca);
                    const auto row_lo = sys.K.row_ptr[static_cast<std::size_t>(gr)];
                    const auto row_hi = sys.K.row_ptr[static_cast<std::size_t>(gr) + 1];
                    for (int b = 0; b < 8; ++b) {
                        for (int cb = 0; cb < 4; ++cb) {
                            const double v = out.ke[static_cast<std::size_t>(4 * a + ca)]
                                                   [static_cast<std::size_t>(4 * b + cb)];
                            if (v == 0.0) { continue; }
                            const int gc = HexMesh::dof(conn[static_cast<std::size_t>(b)], cb);
                            const auto* begin = sys.K.col.data() + row_lo;
                            const auto* end = sys.K.col.data() + row_hi;
                            const auto* it = std::lower_bound(begin, end, gc);
                            sys.K.val[static_cast<std::size_t>(row_lo + (it - begin))] += v;
                        }
                    }
                    sys.R[static_cast<std::size_t>(gr)] +=
                        out.re[static_cast<std::size_t>(4 * a + ca)];
                }
            }
        });
        if (!error.empty()) { throw DegenerateElementError(-1, "assemble: " + error); }
    }

    // Constraint elimination.
    std::vector<char> constrained(static_cast<std::size_t>(mesh.n_dofs), 0);
    std::vector<double> delta(static_cast<std::size_t>(mesh.n_dofs), 0.0);
    for (const auto& [dof, value] : constraints) {
        if (dof < 0 || dof >= mesh.n_dofs) {
            throw std::invalid_argument("assemble: constrained DoF out of range");
        }
        constrained[static_cast<std::size_t>(dof)] = 1;
        const int node = HexMesh::dof_node(dof);
        const int field = HexMesh::dof_field(dof);
        const double current = field < 3 ? state.u_cur[static_cast<std::size_t>(3 * node + field)]
                                        : state.theta_cur[static_cast<std::size_t>(node)];
        delta[static_cast<std::size_t>(dof)] = value - current;
    }
    for (const auto& [dof, value] : constraints) {
        const double d = delta[static_cast<std::size_t>(dof)];
        // Move column contributions to the residual (pattern symmetry gives
        // the column through the row), then zero row and column.
        const auto lo = sys.K.row_ptr[static_cast<std::size_t>(dof)];
        const auto hi = sys.K.row_ptr[static_cast<std::size_t>(dof) + 1];
        for (std::int64_t k = lo; k < hi; ++k) {
            const int other = sys.K.col[static_cast<std::size_t>(k)];
            sys.K.val[static_cast<std::size_t>(k)] = 0.0;  // row dof
            if (other == dof) { continue; }
            if (double* p = sys.K.find(other, dof)) {
                if (!constrained[static_cast<std::size_t>(other)] && d != 0.0) {
                    sys.R[static_cast<std::size_t>(other)] -= *p * d;
                }
                *p = 0.0;  // column dof
            }
        }
        if (double* diag = sys.K.find(dof, dof)) { *diag = 1.0; }
        sys.R[static_cast<std::size_t>(dof)] = d;
    }
    return sys;
}

BlockSystem assemble(const HexMesh& mesh, const SimulationState& state, const MaterialParams& mat,
                     const std::vector<std::pair<int, double>>& constraints, int n_threads) {
    AssemblyWorkspace ws(mesh);
    return assemble(mesh, state, mat, constraints, ws, n_threads);
}

} // namespace weldsim
