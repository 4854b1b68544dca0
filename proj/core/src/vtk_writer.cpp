#include "weldsim/vtk_writer.hpp"

#include <fstream>
#include <stdexcept>

#include "weldsim/errors.hpp"

namespace weldsim {

void write_vtk(const HexMesh& mesh, const SimulationState& state, std::ostream& os) {
    if (static_cast<int>(state.theta_cur.size()) != mesh.n_nodes ||
        static_cast<int>(state.u_cur.size()) != 3 * mesh.n_nodes) {
        throw std::invalid_argument("write_vtk: state size does not match mesh");
    }
    os.precision(12);
    os << "# vtk DataFile Version 3.0\n";
    os << "weldsim snapshot t=" << state.time << "\n";
    os << "ASCII\n";
    os << "DATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << mesh.n_nodes << " double\n";
    for (const auto& x : mesh.node_coords) { os << x[0] << " " << x[1] << " " << x[2] << "\n"; }

    const int ne = mesh.n_elements();
    os << "CELLS " << ne << " " << 9 * ne << "\n";
    for (const auto& conn : mesh.elem_conn) {
        os << 8;
        for (int n : conn) { os << " " << n; }
        os << "\n";
    }
    os << "CELL_TYPES " << ne << "\n";
    for (int e = 0; e < ne; ++e) { os << 12 << "\n"; }

    os << "POINT_DATA " << mesh.n_nodes << "\n";
    os << "SCALARS temperature double 1\n";
    os << "LOOKUP_TABLE default\n";
    for (int n = 0; n < mesh.n_nodes; ++n) { os << state.theta_cur[static_cast<std::size_t>(n)] << "\n"; }
    os << "VECTORS displacement double\n";
    for (int n = 0; n < mesh.n_nodes; ++n) {
        os << state.u_cur[static_cast<std::size_t>(3 * n)] << " "
           << state.u_cur[static_cast<std::size_t>(3 * n + 1)] << " "
           << state.u_cur[static_cast<std::size_t>(3 * n + 2)] << "\n";
    }
}

void write_vtk(const HexMesh& mesh, const SimulationState& state, const std::string& path) {
    std::ofstream os(path);
    if (!os) { throw IoError("write_vtk: cannot open " + path); }
    write_vtk(mesh, state, os);
    if (!os) { throw IoError("write_vtk: write failed for " + path); }
}

} // namespace weldsim
