#include "weldsim/dirichlet.hpp"

#include <algorithm>
#include <cmath>

namespace weldsim {

std::vector<std::pair<int, double>> DirichletSets::dof_constraints() const {
    std::vector<std::pair<int, double>> out;
    out.reserve(3 * displacement_nodes.size() + temperature.size());
    for (int n : displacement_nodes) {
        for (int c = 0; c < 3; ++c) { out.emplace_back(HexMesh::dof(n, c), 0.0); }
    }
    for (const auto& [n, v] : temperature) { out.emplace_back(HexMesh::dof(n, 3), v); }
    return out;
}

DirichletSets build_dirichlet_sets(const HexMesh& mesh, const MeltPool& pool, double t,
                                   const ClampSpec& clamp, double dt, double theta_init) {
    DirichletSets sets;
    sets.time = t;

    const double lo = 0.0;
    const double hi = mesh.extent[static_cast<std::size_t>(clamp.axis)];
    for (int n = 0; n < mesh.n_nodes; ++n) {
        const double c =
            mesh.node_coords[static_cast<std::size_t>(n)][static_cast<std::size_t>(clamp.axis)];
        if ((clamp.min_face && std::abs(c - lo) <= clamp.snap_tol) ||
            (clamp.max_face && std::abs(c - hi) <= clamp.snap_tol)) {
            sets.displacement_nodes.push_back(n);
        }
    }

    const int n_ramp = std::max(1, pool.n_ramp);
    for (int n = 0; n < mesh.n_nodes; ++n) {
        const auto& x = mesh.node_coords[static_cast<std::size_t>(n)];
        if (!inside_pool(pool, x, t)) { continue; }
        double value = pool.theta_l;
        if (n_ramp > 1) {
            // Consecutive steps (ending at t) the node has been inside. The
            // first step is at t = dt; the initial state t = 0 is not a step.
            int steps_inside = 1;
            while (steps_inside < n_ramp) {
                const double t_prev = t - steps_inside * dt;
                if (t_prev < 0.5 * dt || !inside_pool(pool, x, t_prev)) { break; }
                ++steps_inside;
            }
            const double f = std::min(1.0, static_cast<double>(steps_inside) / n_ramp);
            value = theta_init + f * (pool.theta_l - theta_init);
        }
        sets.temperature.emplace_back(n, value);
    }

    if (sets.temperature.empty()) {
        sets.warnings.push_back("melt pool engulfs no node at t = " + std::to_string(t) +
                                " (laser off the plate?)");
    }
    return sets;
}

std::string check_pool_footprint(const HexMesh& mesh, const MeltPool& pool, double t_end) {
    double a_x = pool.a_x, a_y = pool.a_y;
    if (pool.shape == MeltPool::Shape::triangulated && !pool.triangles.empty()) {
        a_x = 0.0;
        a_y = 0.0;
        for (const auto& tr : pool.triangles) {
            for (const auto& v : tr.v) {
                a_x = std::max(a_x, std::abs(v[0]));
                a_y = std::max(a_y, std::abs(v[1]));
            }
        }
    }
    const double x_start = pool_center_x(pool, 0.0) - a_x;
    const double x_end = pool_center_x(pool, t_end) + a_x;
    if (x_start < 0.0 || x_end > mesh.extent[0] || pool.center_y - a_y < 0.0 ||
        pool.center_y + a_y > mesh.extent[1]) {
        return "melt pool footprint leaves the plate within t <= " + std::to_string(t_end);
    }
    return {};
}

} // namespace weldsim
