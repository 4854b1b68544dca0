#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weldsim/hex_mesh.hpp"
#include "weldsim/melt_pool.hpp"

namespace weldsim {

/// Mechanical clamping: nodes on the listed coordinate planes get u = 0.
/// Default: the faces y = 0 and y = extent_y of the plate.
struct ClampSpec {
    int axis = 1;                  ///< clamp planes orthogonal to this axis
    bool min_face = true;
    bool max_face = true;
    double snap_tol = 1e-9;        ///< mm
};

/// Dirichlet node sets for one time level: clamped displacement nodes and
/// per-node prescribed temperatures.
struct DirichletSets {
    std::vector<int> displacement_nodes;                ///< u = 0, sorted
    std::vector<std::pair<int, double>> temperature;    ///< (node, theta), sorted by node
    double time = 0.0;
    std::vector<std::string> warnings;

    /// Flattened (dof, value) constraint list.
    std::vector<std::pair<int, double>> dof_constraints() const;
};

/// Build the Dirichlet sets at time t: the clamped faces plus every node
/// inside the pool at the pool temperature. With pool.n_ramp > 1 the value
/// ramps linearly from theta_init over the first n_ramp consecutive steps a
/// node spends inside the pool (the count is recomputed from the pool
/// trajectory, keeping this a pure function of (mesh, pool, t)).
/// An empty temperature set records a warning (laser off the plate).
DirichletSets build_dirichlet_sets(const HexMesh& mesh, const MeltPool& pool, double t,
                                   const ClampSpec& clamp, double dt, double theta_init = 20.0);

/// Footprint check over the simulated time span [0, t_end]; returns a
/// warning string when the pool leaves the plate, empty otherwise.
std::string check_pool_footprint(const HexMesh& mesh, const MeltPool& pool, double t_end);

} // namespace weldsim
