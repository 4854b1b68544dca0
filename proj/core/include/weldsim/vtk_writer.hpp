#pragma once

#include <iosfwd>
#include <string>

#include "weldsim/hex_mesh.hpp"
#include "weldsim/state.hpp"

namespace weldsim {

/// Write the mesh with point data "temperature" (scalar) and
/// "displacement" (3-vector) as a VTK legacy ASCII unstructured grid
/// (hexahedron cells, type 12).
void write_vtk(const HexMesh& mesh, const SimulationState& state, std::ostream& os);
void write_vtk(const HexMesh& mesh, const SimulationState& state, const std::string& path);

} // namespace weldsim
