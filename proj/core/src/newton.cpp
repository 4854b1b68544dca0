#include "weldsim/newton.hpp"

#include <cmath>
#include <cstdlib>

#include "weldsim/errors.hpp"

namespace weldsim {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) { s += x * x; }
    return std::sqrt(s);
}

} // namespace

NewtonReport newton_solve(const HexMesh& mesh, SimulationState& state, const MaterialParams& mat,
                          const std::vector<std::pair<int, double>>& constraints,
                          const DofMap& dofmap, const PrecBuilder& prec_builder,
                          const NewtonOptions& options, AssemblyWorkspace& ws, int n_threads) {
    NewtonReport report;
    std::vector<double> dd_update(static_cast<std::size_t>(mesh.n_dofs));

    for (int iter = 0; iter <= options.max_newton; ++iter) {
        BlockSystem sys = assemble(mesh, state, mat, constraints, ws, n_threads);
        const double rnorm = norm2(sys.R);
        report.residual_norms.push_back(rnorm);
        if (rnorm <= options.abs_tol) {
            report.converged = true;
            return report;
        }
        if (iter == options.max_newton) { break; }  // budget exhausted

        const LinearOperator apply_a = [&sys](std::span<const double> x, std::span<double> y) {
            sys.K.spmv(x, y);
        };
        const LinearOperator apply_m = prec_builder ? prec_builder(sys, dofmap) : LinearOperator{};

        GmresStats stats;
        try {
            stats = gmres(apply_a, apply_m, sys.R, dd_update, options.gmres);
        } catch (const std::runtime_error& e) {
            report.failure = "linear solve failed in Newton iteration " +
                             std::to_string(iter + 1) + ": " + e.what();
            report.solves.push_back(std::move(stats));
            ++report.newton_iters;
            return report;
        }
        const bool solve_converged = stats.converged;
        report.solves.push_back(std::move(stats));
        ++report.newton_iters;
        if (!solve_converged) {
            report.failure = "GMRES did not converge in Newton iteration " +
                             std::to_string(iter + 1);
            return report;
        }

        for (int n = 0; n < mesh.n_nodes; ++n) {
            for (int c = 0; c < 3; ++c) {
                state.u_cur[static_cast<std::size_t>(3 * n + c)] +=
                    dd_update[static_cast<std::size_t>(HexMesh::dof(n, c))];
            }
            state.theta_cur[static_cast<std::size_t>(n)] +=
                dd_update[static_cast<std::size_t>(HexMesh::dof(n, 3))];
        }
    }
    report.failure = "Newton did not reach the residual tolerance within " +
                     std::to_string(options.max_newton) + " iterations";
    return report;
}

int rounded_average(long long total, long long count) {
    if (count == 0) { return 0; }
    return static_cast<int>(std::llround(static_cast<double>(total) / static_cast<double>(count)));
}

int TimeLoopReport::it_tot() const {
    int t = 0;
    for (const auto& s : steps) { t += s.it_tot; }
    return t;
}

int TimeLoopReport::it_newton_total() const {
    int t = 0;
    for (const auto& s : steps) { t += s.it_newton; }
    return t;
}

int TimeLoopReport::it_avg() const {
    long long solves = 0;
    for (const auto& s : steps) { solves += static_cast<long long>(s.gmres_iters.size()); }
    return rounded_average(it_tot(), solves);
}

TimeLoopReport time_loop(const HexMesh& mesh, const DomainDecomposition& dd,
                         const MaterialParams& mat, const MeltPool& pool, const ClampSpec& clamp,
                         SimulationState& state, int n_steps, double dt,
                         const PrecBuilder& prec_builder, const NewtonOptions& options,
                         int n_threads,
                         const std::function<void(int, const SimulationState&)>& on_step) {
    if (n_steps < 1) { throw std::invalid_argument("time_loop: n_steps must be >= 1"); }
    TimeLoopReport report;
    AssemblyWorkspace ws(mesh);
    const double theta_init = mat.theta0;

    for (int step = 1; step <= n_steps; ++step) {
        const double t = step * dt;
        state.dt = dt;
        state.time = t;
        state.u_n = state.u_cur;
        state.theta_n = state.theta_cur;

        const DirichletSets sets = build_dirichlet_sets(mesh, pool, t, clamp, dt, theta_init);
        const auto constraints = sets.dof_constraints();
        const DofMap dofmap = build_dof_map(mesh, dd, constraints);

        // Impose the prescribed values on the iterate before solving.
        for (int n : sets.displacement_nodes) {
            for (int c = 0; c < 3; ++c) { state.u_cur[static_cast<std::size_t>(3 * n + c)] = 0.0; }
        }
        for (const auto& [n, v] : sets.temperature) {
            state.theta_cur[static_cast<std::size_t>(n)] = v;
        }

        NewtonReport newton = newton_solve(mesh, state, mat, constraints, dofmap, prec_builder,
                                           options, ws, n_threads);

        StepStats stats;
        stats.step = step;
        stats.time = t;
        stats.it_newton = newton.newton_iters;
        for (const auto& s : newton.solves) { stats.gmres_iters.push_back(s.iterations); }
        for (int it : stats.gmres_iters) { stats.it_tot += it; }
        stats.it_avg = rounded_average(stats.it_tot, static_cast<long long>(stats.gmres_iters.size()));
        stats.converged = newton.converged;
        stats.warnings = sets.warnings;
        report.steps.push_back(std::move(stats));

        if (!newton.converged) {
            report.failure = "time step " + std::to_string(step) + ": " +
                             (newton.failure.empty() ? "Newton did not converge" : newton.failure);
            report.converged = false;
            return report;
        }
        if (on_step) { on_step(step, state); }
    }
    report.converged = true;
    return report;
}

} // namespace weldsim
