#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace weldsim {

/// Structured hexahedral mesh of an axis-aligned box.
///
/// Nodes and elements are numbered lexicographically with x fastest:
///   node(ix,iy,iz)  = ix + (nx+1)*(iy + (ny+1)*iz)
///   elem(ex,ey,ez)  = ex +  nx   *(ey +  ny   *ez)
/// Element connectivity follows the usual hexahedron corner convention
/// (VTK cell type 12): corners 0..3 on the -z face counterclockwise
/// starting at (-x,-y), corners 4..7 directly above on the +z face.
///
/// Each node carries 4 degrees of freedom in the fixed order
/// (u_x, u_y, u_z, theta); dof(node, c) = 4*node + c.
struct HexMesh {
    std::array<double, 3> extent{};  ///< box dimensions in mm
    std::array<int, 3> n_elems{};    ///< elements per axis

    std::vector<std::array<double, 3>> node_coords;
    std::vector<std::array<int, 8>> elem_conn;

    int n_nodes = 0;
    int n_dofs = 0;  ///< 4 * n_nodes

    std::array<int, 3> nodes_per_axis() const {
        return {n_elems[0] + 1, n_elems[1] + 1, n_elems[2] + 1};
    }
    std::array<double, 3> spacing() const {
        return {extent[0] / n_elems[0], extent[1] / n_elems[1], extent[2] / n_elems[2]};
    }

    int node_id(int ix, int iy, int iz) const {
        const auto n = nodes_per_axis();
        return ix + n[0] * (iy + n[1] * iz);
    }
    std::array<int, 3> node_ijk(int id) const {
        const auto n = nodes_per_axis();
        return {id % n[0], (id / n[0]) % n[1], id / (n[0] * n[1])};
    }
    int elem_id(int ex, int ey, int ez) const {
        return ex + n_elems[0] * (ey + n_elems[1] * ez);
    }
    std::array<int, 3> elem_ijk(int id) const {
        return {id % n_elems[0], (id / n_elems[0]) % n_elems[1], id / (n_elems[0] * n_elems[1])};
    }
    int n_elements() const { return n_elems[0] * n_elems[1] * n_elems[2]; }

    static int dof(int node, int component) { return 4 * node + component; }
    static int dof_field(int dof_index) { return dof_index % 4; }  ///< 0..2 = u, 3 = theta
    static int dof_node(int dof_index) { return dof_index / 4; }
};

/// Build the structured mesh of the box [0,extent] with n_elems elements
/// per axis. Throws std::invalid_argument for non-positive inputs.
HexMesh build_hex_mesh(const std::array<double, 3>& extent, const std::array<int, 3>& n_elems);

/// Plain-text debug dump (counts plus one coordinate line per node).
void dump_mesh(const HexMesh& mesh, std::ostream& os);

} // namespace weldsim
