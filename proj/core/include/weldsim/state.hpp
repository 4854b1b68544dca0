#pragma once

#include <vector>

namespace weldsim {

/// Nodal fields at the previous time level plus the current Newton iterate.
struct SimulationState {
    std::vector<double> u_n;        ///< displacements at t_n, 3 per node (mm)
    std::vector<double> theta_n;    ///< temperatures at t_n, 1 per node (C)
    std::vector<double> u_cur;      ///< current iterate at t_{n+1}
    std::vector<double> theta_cur;  ///< current iterate at t_{n+1}
    double dt = 0.05;               ///< time step (s)
    double time = 0.0;              ///< current time t_{n+1} (s)

    static SimulationState uniform(int n_nodes, double theta_init, double dt) {
        SimulationState s;
        s.u_n.assign(static_cast<std::size_t>(3 * n_nodes), 0.0);
        s.theta_n.assign(static_cast<std::size_t>(n_nodes), theta_init);
        s.u_cur = s.u_n;
        s.theta_cur = s.theta_n;
        s.dt = dt;
        return s;
    }
};

} // namespace weldsim
