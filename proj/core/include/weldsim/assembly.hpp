#pragma once

#include <utility>
#include <vector>

#include "weldsim/csr_matrix.hpp"
#include "weldsim/hex_mesh.hpp"
#include "weldsim/material.hpp"
#include "weldsim/state.hpp"

namespace weldsim {

/// Monolithic tangent and residual over all 4*n_nodes DoFs. The four
/// field blocks (uu, ut, tu, tt) live interleaved in K under the
/// node-blocked DoF layout; HexMesh::dof_field tags rows/columns.
struct BlockSystem {
    CsrMatrix K;
    std::vector<double> R;
};

/// Reusable sparsity pattern (27-node-stencil superset) plus the element
/// coloring used for deterministic parallel scatter.
struct AssemblyWorkspace {
    explicit AssemblyWorkspace(const HexMesh& mesh);

    CsrMatrix pattern;  ///< values zeroed before each assemble
    std::array<std::vector<int>, 8> color_elems;
};

/// Assemble the tangent/residual at the current iterate and eliminate the
/// Dirichlet constraints (dof, prescribed total value):
/// for a constrained DoF c with increment delta_c = value - iterate[c],
/// the residual absorbs -K(:,c)*delta_c, row/column c are zeroed, the
/// diagonal is set to 1 and R[c] = delta_c. With the prescribed values
/// already imposed on the iterate this reduces to identity rows with zero
/// residual. Element failures are annotated with the element index.
BlockSystem assemble(const HexMesh& mesh, const SimulationState& state, const MaterialParams& mat,
                     const std::vector<std::pair<int, double>>& constraints,
                     AssemblyWorkspace& ws, int n_threads = 1);

/// Convenience overload building a fresh workspace.
BlockSystem assemble(const HexMesh& mesh, const SimulationState& state, const MaterialParams& mat,
                     const std::vector<std::pair<int, double>>& constraints, int n_threads = 1);

} // namespace weldsim
