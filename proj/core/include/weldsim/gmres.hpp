#pragma once

#include <functional>
#include <span>
#include <vector>

namespace weldsim {

/// Linear operator y = op(x); x and y have equal length and never alias.
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct GmresConfig {
    double rtol = 1e-6;   ///< stop at ||b - A x|| / ||b|| <= rtol (unpreconditioned)
    int max_iters = 1000;
    int restart = 0;      ///< 0 = full GMRES, no restart
    bool reorthogonalize = false;  ///< second modified Gram-Schmidt pass
};

struct GmresStats {
    int iterations = 0;
    double final_relative_residual = 0.0;  ///< recomputed ||b - A x|| / ||b||
    bool converged = false;
    std::vector<double> residual_history;  ///< relative residual per iteration
};

/// Right-preconditioned GMRES: solves A M^{-1} y = b via Arnoldi with
/// modified Gram-Schmidt and returns x = M^{-1} y. The convergence monitor
/// is the unpreconditioned relative residual, which right preconditioning
/// makes directly available. Zero initial guess.
///
/// apply_m may be empty (identity preconditioner). Throws
/// GmresBreakdownError on Arnoldi breakdown before convergence and
/// NumericalFailureError when NaN/Inf contaminates the iteration.
GmresStats gmres(const LinearOperator& apply_a, const LinearOperator& apply_m,
                 std::span<const double> b, std::span<double> x, const GmresConfig& config = {});

} // namespace weldsim
