#include "weldsim/hex_mesh.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace weldsim {

HexMesh build_hex_mesh(const std::array<double, 3>& extent, const std::array<int, 3>& n_elems) {
    for (int d = 0; d < 3; ++d) {
        if (!(extent[d] > 0.0)) {
            throw std::invalid_argument("build_hex_mesh: extent[" + std::to_string(d) +
                                        "] must be positive");
        }
        if (n_elems[d] <= 0) {
            throw std::invalid_argument("build_hex_mesh: n_elems[" + std::to_string(d) +
                                        "] must be positive");
        }
    }

    HexMesh mesh;
    mesh.extent = extent;
    mesh.n_elems = n_elems;

    const auto nn = mesh.nodes_per_axis();
    const auto h = mesh.spacing();
    mesh.n_nodes = nn[0] * nn[1] * nn[2];
    mesh.n_dofs = 4 * mesh.n_nodes;

    mesh.node_coords.resize(static_cast<std::size_t>(mesh.n_nodes));
    for (int iz = 0; iz < nn[2]; ++iz) {
        for (int iy = 0; iy < nn[1]; ++iy) {
            for (int ix = 0; ix < nn[0]; ++ix) {
                mesh.node_coords[static_cast<std::size_t>(mesh.node_id(ix, iy, iz))] = {
                    ix * h[0], iy * h[1], iz * h[2]};
            }
        }
    }

    mesh.elem_conn.resize(static_cast<std::size_t>(mesh.n_elements()));
    for (int ez = 0; ez < n_elems[2]; ++ez) {
        for (int ey = 0; ey < n_elems[1]; ++ey) {
            for (int ex = 0; ex < n_elems[0]; ++ex) {
                auto& c = mesh.elem_conn[static_cast<std::size_t>(mesh.elem_id(ex, ey, ez))];
                c[0] = mesh.node_id(ex, ey, ez);
                c[1] = mesh.node_id(ex + 1, ey, ez);
                c[2] = mesh.node_id(ex + 1, ey + 1, ez);
                c[3] = mesh.node_id(ex, ey + 1, ez);
                c[4] = mesh.node_id(ex, ey, ez + 1);
                c[5] = mesh.node_id(ex + 1, ey, ez + 1);
                c[6] = mesh.node_id(ex + 1, ey + 1, ez + 1);
                c[7] = mesh.node_id(ex, ey + 1, ez + 1);
            }
        }
    }
    return mesh;
}

void dump_mesh(const HexMesh& mesh, std::ostream& os) {
    os << "hexmesh " << mesh.extent[0] << " " << mesh.extent[1] << " " << mesh.extent[2] << " "
       << mesh.n_elems[0] << " " << mesh.n_elems[1] << " " << mesh.n_elems[2] << "\n";
    os << "nodes " << mesh.n_nodes << " dofs " << mesh.n_dofs << "\n";
    for (int n = 0; n < mesh.n_nodes; ++n) {
        const auto& x = mesh.node_coords[static_cast<std::size_t>(n)];
        os << n << " " << x[0] << " " << x[1] << " " << x[2] << "\n";
    }
}

} // namespace weldsim
