#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "weldsim/hex_mesh.hpp"

namespace weldsim {

enum class ComponentKind { vertex, edge, face };

/// One connected component of the subdomain interface: every node in it is
/// contained in the closures of exactly the subdomains listed in sharing_set
/// (|sharing_set| >= 2).
struct InterfaceComponent {
    ComponentKind kind = ComponentKind::face;
    std::vector<int> nodes;        ///< sorted node indices
    std::vector<int> sharing_set;  ///< sorted subdomain indices
};

/// Nonoverlapping box partition of a HexMesh plus the derived overlapping
/// node sets and interface classification.
struct DomainDecomposition {
    std::array<int, 3> grid{};  ///< subdomains per axis
    int n_subdomains = 0;

    std::vector<int> owner;  ///< per-element subdomain index

    int overlap_k = 0;
    /// Per-subdomain sorted node lists of the overlapping subdomains
    /// Omega'_i (for overlap_k = 0 these are the closed nonoverlapping
    /// subdomain node sets).
    std::vector<std::vector<int>> overlapping_nodes;
    /// Per-subdomain element index boxes [lo, hi) of Omega'_i.
    std::vector<std::array<int, 6>> overlapping_elem_box;

    std::vector<int> interface_nodes;  ///< sorted node list for Gamma
    std::vector<InterfaceComponent> components;

    /// Per-node list of subdomains whose closure contains the node
    /// (sorted; size 1 for nodes strictly inside one subdomain).
    std::vector<std::vector<int>> node_sharing;

    /// Box of elements owned by subdomain s, as [lo_x,lo_y,lo_z,hi_x,hi_y,hi_z)
    /// in element lattice coordinates.
    std::array<int, 6> owned_elem_box(const HexMesh& mesh, int s) const;
};

/// Assign every element to the subdomain box containing it.
/// grid[d] must divide mesh.n_elems[d]; anything else is rejected
/// (irregular partitions are unsupported).
DomainDecomposition partition(const HexMesh& mesh, const std::array<int, 3>& grid);

/// Populate dd.overlapping_nodes with the node sets of the overlapping
/// subdomains Omega'_i: all nodes of elements within element-adjacency
/// distance <= k of the owned elements (two elements are adjacent when they
/// share at least one node). k = 0 yields the closed nonoverlapping sets;
/// large k saturates at the full mesh.
void extend_overlap(const HexMesh& mesh, DomainDecomposition& dd, int k);

/// Group the interface nodes (shared by >= 2 subdomain closures, minus
/// dirichlet_nodes) by identical sharing set, split each group into
/// connected parts under mesh-edge adjacency, and classify every part as
/// vertex/edge/face. Components are ordered by their minimal node index.
///
/// dirichlet_nodes is the set of nodes excluded from Gamma entirely (nodes
/// carrying Dirichlet conditions in all fields); per-field exclusions are
/// applied later when coarse interface values are filled.
void classify_interface(const HexMesh& mesh, DomainDecomposition& dd,
                        const std::vector<int>& dirichlet_nodes);

/// Monolithic restriction operator R_i represented as the list of global
/// DoF indices it selects: the 4 node-blocked DoFs of every node of
/// Omega'_i, in ascending node order.
std::vector<std::vector<int>> build_restrictions(const DomainDecomposition& dd);

/// DoF bookkeeping for one constrained system: the interface/interior split
/// and the Dirichlet-constrained set. The three sets are disjoint and their
/// union is [0, n_dofs).
struct DofMap {
    int n_dofs = 0;
    std::vector<int> interior;       ///< I, sorted
    std::vector<int> interface;      ///< Gamma, sorted
    std::vector<int> constrained;    ///< sorted Dirichlet DoFs
    std::vector<double> constrained_values;  ///< prescribed value per constrained DoF
    std::vector<char> is_constrained;        ///< n_dofs flags
    std::vector<char> is_interface_dof;      ///< n_dofs flags (excludes constrained)
};

/// Build the I/Gamma/constrained split from the classified decomposition and
/// a list of (dof, prescribed value) pairs.
DofMap build_dof_map(const HexMesh& mesh, const DomainDecomposition& dd,
                     const std::vector<std::pair<int, double>>& dirichlet_dofs);

/// Plain-text debug dump: node count, owner list, component table.
void dump_decomposition(const DomainDecomposition& dd, const HexMesh& mesh, std::ostream& os);

} // namespace weldsim
