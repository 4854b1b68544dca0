#include "weldsim/gmres.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "weldsim/errors.hpp"

namespace weldsim {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) { s += x * x; }
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) { s += a[i] * b[i]; }
    return s;
}

} // namespace

GmresStats gmres(const LinearOperator& apply_a, const LinearOperator& apply_m,
                 std::span<const double> b, std::span<double> x, const GmresConfig& config) {
    const std::size_t n = b.size();
    if (x.size() != n) { throw std::invalid_argument("gmres: size mismatch"); }
    if (config.rtol <= 0.0 || config.max_iters <= 0) {
        throw std::invalid_argument("gmres: rtol and max_iters must be positive");
    }

    GmresStats stats;
    std::fill(x.begin(), x.end(), 0.0);

    const double norm_b = norm2(b);
    if (!std::isfinite(norm_b)) { throw NumericalFailureError("gmres: right-hand side is not finite"); }
    if (norm_b == 0.0) {
        stats.converged = true;
        return stats;
    }

    const auto precondition = [&](std::span<const double> v, std::span<double> z) {
        if (apply_m) {
            apply_m(v, z);
        } else {
            std::copy(v.begin(), v.end(), z.begin());
        }
    };

    std::vector<double> z(n), w(n), residual(n);
    std::vector<std::vector<double>> basis;       // v_0 .. v_j
    std::vector<std::vector<double>> h_cols;      // Hessenberg columns, Givens-reduced in place
    std::vector<double> cs, sn, g;

    // True residual of the accumulated solution (verification of the Givens
    // estimate before declaring convergence).
    const auto true_relative_residual = [&](std::span<const double> xc) {
        apply_a(xc, residual);
        for (std::size_t i = 0; i < n; ++i) { residual[i] = b[i] - residual[i]; }
        return norm2(residual) / norm_b;
    };

    // Assemble x += M^{-1} (V y) for the current least-squares coefficients.
    const auto accumulate_solution = [&](std::span<double> xc, int m) {
        std::vector<double> y(static_cast<std::size_t>(m));
        for (int k = m - 1; k >= 0; --k) {
            double s = g[static_cast<std::size_t>(k)];
            for (int l = k + 1; l < m; ++l) {
                s -= h_cols[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] *
                     y[static_cast<std::size_t>(l)];
            }
            y[static_cast<std::size_t>(k)] =
                s / h_cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (int k = 0; k < m; ++k) {
            const double yk = y[static_cast<std::size_t>(k)];
            const auto& vk = basis[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < n; ++i) { w[i] += yk * vk[i]; }
        }
        precondition(w, z);
        for (std::size_t i = 0; i < n; ++i) { xc[i] += z[i]; }
    };

    std::vector<double> x_base(n, 0.0);  // accumulated solution across restart cycles
    int total_iters = 0;
    bool done = false;

    while (!done && total_iters < config.max_iters) {
        // Cycle residual (equals b on the first cycle).
        apply_a(x_base, residual);
        for (std::size_t i = 0; i < n; ++i) { residual[i] = b[i] - residual[i]; }
        const double beta = norm2(residual);
        if (!std::isfinite(beta)) { throw NumericalFailureError("gmres: residual is not finite"); }
        if (beta / norm_b <= config.rtol) {
            stats.converged = true;
            break;
        }

        basis.clear();
        h_cols.clear();
        cs.clear();
        sn.clear();
        g.assign(1, beta);
        basis.emplace_back(residual);
        for (auto& v : basis.back()) { v /= beta; }

        const int cycle_cap = config.restart > 0
                                  ? std::min(config.restart, config.max_iters - total_iters)
                                  : config.max_iters - total_iters;

        for (int j = 0; j < cycle_cap; ++j) {
            precondition(basis[static_cast<std::size_t>(j)], z);
            apply_a(z, w);

            // Modified Gram-Schmidt (optionally a second pass).
            std::vector<double> h(static_cast<std::size_t>(j) + 2, 0.0);
            for (int i = 0; i <= j; ++i) {
                const double hij = dot(w, basis[static_cast<std::size_t>(i)]);
                h[static_cast<std::size_t>(i)] = hij;
                const auto& vi = basis[static_cast<std::size_t>(i)];
                for (std::size_t p = 0; p < n; ++p) { w[p] -= hij * vi[p]; }
            }
            if (config.reorthogonalize) {
                for (int i = 0; i <= j; ++i) {
                    const double hij = dot(w, basis[static_cast<std::size_t>(i)]);
                    h[static_cast<std::size_t>(i)] += hij;
                    const auto& vi = basis[static_cast<std::size_t>(i)];
                    for (std::size_t p = 0; p < n; ++p) { w[p] -= hij * vi[p]; }
                }
            }
            const double hsub = norm2(w);
            h[static_cast<std::size_t>(j) + 1] = hsub;
            if (!std::isfinite(hsub)) {
                throw NumericalFailureError("gmres: Arnoldi vector is not finite at iteration " +
                                            std::to_string(total_iters + 1));
            }

            // Givens-reduce the new column.
            for (int i = 0; i < j; ++i) {
                const double t = cs[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)] +
                                 sn[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i) + 1];
                h[static_cast<std::size_t>(i) + 1] =
                    -sn[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)] +
                    cs[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i) + 1];
                h[static_cast<std::size_t>(i)] = t;
            }
            const double denom = std::hypot(h[static_cast<std::size_t>(j)], hsub);
            double c = 1.0, s = 0.0;
            if (denom > 0.0) {
                c = h[static_cast<std::size_t>(j)] / denom;
                s = hsub / denom;
            }
            cs.push_back(c);
            sn.push_back(s);
            h[static_cast<std::size_t>(j)] = denom;
            h[static_cast<std::size_t>(j) + 1] = 0.0;
            h_cols.push_back(std::move(h));

            g.push_back(-s * g[static_cast<std::size_t>(j)]);
            g[static_cast<std::size_t>(j)] *= c;

            ++total_iters;
            const double est = std::abs(g.back()) / norm_b;
            if (!std::isfinite(est)) {
                throw NumericalFailureError("gmres: residual estimate is not finite at iteration " +
                                            std::to_string(total_iters));
            }
            stats.residual_history.push_back(est);

            const bool tiny_h = hsub <= 1e-14 * denom || hsub == 0.0;
            if (est <= config.rtol) {
                // Verify the estimate on the true residual before accepting.
                std::vector<double> x_cand(x_base);
                accumulate_solution(x_cand, j + 1);
                const double true_rel = true_relative_residual(x_cand);
                if (true_rel <= config.rtol || total_iters >= config.max_iters || tiny_h) {
                    std::copy(x_cand.begin(), x_cand.end(), x_base.begin());
                    stats.converged = true_rel <= config.rtol;
                    done = true;
                    break;
                }
                // Estimate was optimistic; keep iterating on this cycle.
            }
            if (tiny_h) {
                throw GmresBreakdownError(
                    "gmres: Arnoldi breakdown at iteration " + std::to_string(total_iters) +
                    " with relative residual " + std::to_string(est));
            }
            auto& vnext = basis.emplace_back(w);
            for (auto& v : vnext) { v /= hsub; }

            if (total_iters >= config.max_iters) { break; }
        }

        if (!done) {
            // Cycle ended (restart or iteration cap): fold the cycle's
            // least-squares solution into x_base.
            const int m = static_cast<int>(h_cols.size());
            if (m > 0) { accumulate_solution(x_base, m); }
            if (total_iters >= config.max_iters) {
                stats.converged = true_relative_residual(x_base) <= config.rtol;
                break;
            }
        }
    }

    std::copy(x_base.begin(), x_base.end(), x.begin());
    stats.iterations = total_iters;
    stats.final_relative_residual = true_relative_residual(x_base);
    stats.converged = stats.converged && stats.final_relative_residual <= config.rtol;
    return stats;
}

} // namespace weldsim
