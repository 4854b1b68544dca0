#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weldsim/assembly.hpp"
#include "weldsim/decomposition.hpp"
#include "weldsim/dirichlet.hpp"
#include "weldsim/gmres.hpp"
#include "weldsim/melt_pool.hpp"

namespace weldsim {

/// Builds a right preconditioner for a freshly assembled system; called
/// once per Newton iteration (the tangent changes, so factorizations and
/// the coarse space are rebuilt).
using PrecBuilder =
    std::function<LinearOperator(const BlockSystem& sys, const DofMap& dofmap)>;

struct NewtonOptions {
    double abs_tol = 1e-8;  ///< stop at ||R||_2 <= abs_tol
    int max_newton = 10;
    GmresConfig gmres;
};

struct NewtonReport {
    int newton_iters = 0;  ///< number of linear solves performed
    bool converged = false;
    std::vector<GmresStats> solves;          ///< one per Newton iteration
    std::vector<double> residual_norms;      ///< ||R|| before each iteration, then final
    std::string failure;                     ///< set when a linear solve failed
};

/// Newton's method for one time step: assemble -> build preconditioner ->
/// GMRES for the update -> apply, until ||R||_2 <= abs_tol or max_newton.
/// Prescribed Dirichlet values must already be imposed on the iterate
/// (time_loop does this); the constraint elimination then yields zero
/// residual rows for constrained DoFs. A nonconverged GMRES solve aborts
/// the loop and is reported (the "x" outcome), not thrown.
NewtonReport newton_solve(const HexMesh& mesh, SimulationState& state, const MaterialParams& mat,
                          const std::vector<std::pair<int, double>>& constraints,
                          const DofMap& dofmap, const PrecBuilder& prec_builder,
                          const NewtonOptions& options, AssemblyWorkspace& ws, int n_threads);

struct StepStats {
    int step = 0;
    double time = 0.0;
    int it_newton = 0;
    std::vector<int> gmres_iters;
    int it_tot = 0;
    int it_avg = 0;  ///< rounded mean GMRES iterations per linear solve
    bool converged = false;
    std::vector<std::string> warnings;
};

struct TimeLoopReport {
    std::vector<StepStats> steps;
    bool converged = false;  ///< all steps converged
    std::string failure;

    int it_tot() const;
    int it_newton_total() const;
    /// Rounded average GMRES iterations per linear solve over all steps.
    int it_avg() const;
};

/// Round-half-away-from-zero mean used for the it_Avg statistics.
int rounded_average(long long total, long long count);

/// Backward-Euler time stepping: per step, advance the pool, rebuild the
/// Dirichlet sets and the DoF split, copy the converged state to
/// (u_n, theta_n), impose the new prescribed values on the iterate and run
/// newton_solve. A failed step aborts the series; partial results are kept.
/// on_step (optional) runs after every converged step.
TimeLoopReport time_loop(const HexMesh& mesh, const DomainDecomposition& dd,
                         const MaterialParams& mat, const MeltPool& pool, const ClampSpec& clamp,
                         SimulationState& state, int n_steps, double dt,
                         const PrecBuilder& prec_builder, const NewtonOptions& options,
                         int n_threads,
                         const std::function<void(int, const SimulationState&)>& on_step = {});

} // namespace weldsim
