#include "weldsim/sparse_lu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "weldsim/errors.hpp"

namespace weldsim {

std::int64_t LuFactors::nnz_l() const { return dense_ ? 0 : static_cast<std::int64_t>(li_.size()); }
std::int64_t LuFactors::nnz_u() const { return dense_ ? 0 : static_cast<std::int64_t>(ui_.size()); }

namespace {

// Depth-first search computing the reach of column pattern `rows` through
// the partially built L. Emits vertices in reverse topological order into
// xi[top..n-1]. mark is stamped with the column counter `stamp`.
int reach(const std::vector<std::int64_t>& lp, const std::vector<int>& li,
          const std::vector<int>& pinv, std::span<const int> rows, int n, int stamp,
          std::vector<int>& mark, std::vector<int>& xi, std::vector<int>& node_stack,
          std::vector<std::int64_t>& pos_stack) {
    int top = n;
    for (const int start : rows) {
        if (mark[static_cast<std::size_t>(start)] == stamp) { continue; }
        int depth = 0;
        node_stack[0] = start;
        while (depth >= 0) {
            const int i = node_stack[static_cast<std::size_t>(depth)];
            const int jcol = pinv[static_cast<std::size_t>(i)];
            if (mark[static_cast<std::size_t>(i)] != stamp) {
                mark[static_cast<std::size_t>(i)] = stamp;
                pos_stack[static_cast<std::size_t>(depth)] =
                    jcol < 0 ? -1 : lp[static_cast<std::size_t>(jcol)] + 1;  // skip unit diagonal
            }
            bool descended = false;
            if (jcol >= 0) {
                std::int64_t p = pos_stack[static_cast<std::size_t>(depth)];
                const std::int64_t pend = lp[static_cast<std::size_t>(jcol) + 1];
                while (p < pend) {
                    const int r = li[static_cast<std::size_t>(p)];
                    ++p;
                    if (mark[static_cast<std::size_t>(r)] != stamp) {
                        pos_stack[static_cast<std::size_t>(depth)] = p;
                        ++depth;
                        node_stack[static_cast<std::size_t>(depth)] = r;
                        descended = true;
                        break;
                    }
                }
                if (!descended) { pos_stack[static_cast<std::size_t>(depth)] = pend; }
            }
            if (!descended) {
                --depth;
                xi[static_cast<std::size_t>(--top)] = i;
            }
        }
    }
    return top;
}

} // namespace

LuFactors lu_factor(const CsrMatrix& a, LuOptions options) {
    if (a.n_rows != a.n_cols) { throw std::invalid_argument("lu_factor: matrix must be square"); }
    const int n = a.n_rows;

    LuFactors f;
    f.n_ = n;
    if (n == 0) { return f; }

    if (n <= options.dense_threshold) {
        f.dense_ = true;
        f.dense_a_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        f.dense_ipiv_.resize(static_cast<std::size_t>(n));
        auto at = [&](int r, int c) -> double& {
            return f.dense_a_[static_cast<std::size_t>(c) * static_cast<std::size_t>(n) +
                              static_cast<std::size_t>(r)];
        };
        for (int r = 0; r < n; ++r) {
            for (std::int64_t k = a.row_ptr[static_cast<std::size_t>(r)];
                 k < a.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
                at(r, a.col[static_cast<std::size_t>(k)]) = a.val[static_cast<std::size_t>(k)];
            }
        }
        for (int k = 0; k < n; ++k) {
            int piv = k;
            double best = std::abs(at(k, k));
            for (int r = k + 1; r < n; ++r) {
                const double t = std::abs(at(r, k));
                if (t > best) {
                    best = t;
                    piv = r;
                }
            }
            if (best == 0.0) {
                throw SingularMatrixError(k, "lu_factor: exact singularity at pivot row " +
                                                 std::to_string(k));
            }
            f.dense_ipiv_[static_cast<std::size_t>(k)] = piv;
            if (piv != k) {
                for (int c = 0; c < n; ++c) { std::swap(at(k, c), at(piv, c)); }
            }
            const double inv = 1.0 / at(k, k);
            for (int r = k + 1; r < n; ++r) {
                const double m = at(r, k) * inv;
                at(r, k) = m;
                if (m == 0.0) { continue; }
                for (int c = k + 1; c < n; ++c) { at(r, c) -= m * at(k, c); }
            }
        }
        return f;
    }

    if (!options.perm.empty() && static_cast<int>(options.perm.size()) != n) {
        throw std::invalid_argument("lu_factor: permutation size mismatch");
    }
    f.col_perm_ = options.perm;
    if (f.col_perm_.empty()) {
        f.col_perm_.resize(static_cast<std::size_t>(n));
        std::iota(f.col_perm_.begin(), f.col_perm_.end(), 0);
    }

    // Column access to A.
    const CsrMatrix at = csr_transpose(a);

    const std::int64_t reserve = 4 * a.nnz();
    f.lp_.assign(static_cast<std::size_t>(n) + 1, 0);
    f.up_.assign(static_cast<std::size_t>(n) + 1, 0);
    f.li_.reserve(static_cast<std::size_t>(reserve));
    f.lx_.reserve(static_cast<std::size_t>(reserve));
    f.ui_.reserve(static_cast<std::size_t>(reserve));
    f.ux_.reserve(static_cast<std::size_t>(reserve));

    std::vector<int> pinv(static_cast<std::size_t>(n), -1);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    std::vector<int> mark(static_cast<std::size_t>(n), -1);
    std::vector<int> xi(static_cast<std::size_t>(n));
    std::vector<int> node_stack(static_cast<std::size_t>(n));
    std::vector<std::int64_t> pos_stack(static_cast<std::size_t>(n));

    const double tol = options.pivot_threshold;

    for (int k = 0; k < n; ++k) {
        const int q = f.col_perm_[static_cast<std::size_t>(k)];
        const std::int64_t clo = at.row_ptr[static_cast<std::size_t>(q)];
        const std::int64_t chi = at.row_ptr[static_cast<std::size_t>(q) + 1];
        const std::span<const int> arows(at.col.data() + clo, static_cast<std::size_t>(chi - clo));

        const int top =
            reach(f.lp_, f.li_, pinv, arows, n, k, mark, xi, node_stack, pos_stack);

        // Scatter A(:,q) and run the sparse lower triangular solve in
        // topological order.
        for (std::int64_t p = clo; p < chi; ++p) {
            x[static_cast<std::size_t>(at.col[static_cast<std::size_t>(p)])] =
                at.val[static_cast<std::size_t>(p)];
        }
        for (int px = top; px < n; ++px) {
            const int i = xi[static_cast<std::size_t>(px)];
            const int jcol = pinv[static_cast<std::size_t>(i)];
            if (jcol < 0) { continue; }
            const double xi_val = x[static_cast<std::size_t>(i)];
            if (xi_val == 0.0) { continue; }
            for (std::int64_t p = f.lp_[static_cast<std::size_t>(jcol)] + 1;
                 p < f.lp_[static_cast<std::size_t>(jcol) + 1]; ++p) {
                x[static_cast<std::size_t>(f.li_[static_cast<std::size_t>(p)])] -=
                    f.lx_[static_cast<std::size_t>(p)] * xi_val;
            }
        }

        // Pivot choice: largest not-yet-pivotal magnitude, with preference
        // for the diagonal row q when it is within the threshold.
        int ipiv = -1;
        double amax = -1.0;
        for (int px = top; px < n; ++px) {
            const int i = xi[static_cast<std::size_t>(px)];
            if (pinv[static_cast<std::size_t>(i)] < 0) {
                const double t = std::abs(x[static_cast<std::size_t>(i)]);
                if (t > amax) {
                    amax = t;
                    ipiv = i;
                }
            }
        }
        if (ipiv < 0 || amax <= 0.0) {
            for (int px = top; px < n; ++px) { x[static_cast<std::size_t>(xi[static_cast<std::size_t>(px)])] = 0.0; }
            throw SingularMatrixError(
                q, "lu_factor: exact singularity, no admissible pivot for column " +
                       std::to_string(q) + " (factor step " + std::to_string(k) + ")");
        }
        if (pinv[static_cast<std::size_t>(q)] < 0 &&
            std::abs(x[static_cast<std::size_t>(q)]) >= tol * amax &&
            std::abs(x[static_cast<std::size_t>(q)]) > 0.0) {
            ipiv = q;
        }
        const double pivot = x[static_cast<std::size_t>(ipiv)];

        // Emit U rows (already-pivotal entries) and the L column.
        for (int px = top; px < n; ++px) {
            const int i = xi[static_cast<std::size_t>(px)];
            const int jcol = pinv[static_cast<std::size_t>(i)];
            if (jcol >= 0) {
                f.ui_.push_back(jcol);
                f.ux_.push_back(x[static_cast<std::size_t>(i)]);
            }
            // L entries collected below after the pivot is registered.
        }
        f.ui_.push_back(k);
        f.ux_.push_back(pivot);
        f.up_[static_cast<std::size_t>(k) + 1] = static_cast<std::int64_t>(f.ui_.size());

        pinv[static_cast<std::size_t>(ipiv)] = k;
        f.li_.push_back(ipiv);
        f.lx_.push_back(1.0);
        const double inv_pivot = 1.0 / pivot;
        for (int px = top; px < n; ++px) {
            const int i = xi[static_cast<std::size_t>(px)];
            if (pinv[static_cast<std::size_t>(i)] < 0) {
                f.li_.push_back(i);
                f.lx_.push_back(x[static_cast<std::size_t>(i)] * inv_pivot);
            }
            x[static_cast<std::size_t>(i)] = 0.0;
        }
        f.lp_[static_cast<std::size_t>(k) + 1] = static_cast<std::int64_t>(f.li_.size());
    }

    // Remap L row indices into pivot numbering and record the row order.
    for (auto& r : f.li_) { r = pinv[static_cast<std::size_t>(r)]; }
    f.row_of_pos_.resize(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) { f.row_of_pos_[static_cast<std::size_t>(pinv[static_cast<std::size_t>(r)])] = r; }
    return f;
}

std::vector<double> LuFactors::solve(std::span<const double> b) const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    std::vector<double> scratch;
    solve(b, x, scratch);
    return x;
}

void LuFactors::solve(std::span<const double> b, std::span<double> x,
                      std::vector<double>& scratch) const {
    if (static_cast<int>(b.size()) != n_ || static_cast<int>(x.size()) != n_) {
        throw std::invalid_argument("LuFactors::solve: size mismatch");
    }
    if (dense_) {
        const auto at = [&](int r, int c) {
            return dense_a_[static_cast<std::size_t>(c) * static_cast<std::size_t>(n_) +
                            static_cast<std::size_t>(r)];
        };
        std::copy(b.begin(), b.end(), x.begin());
        for (int k = 0; k < n_; ++k) {
            std::swap(x[static_cast<std::size_t>(k)],
                      x[static_cast<std::size_t>(dense_ipiv_[static_cast<std::size_t>(k)])]);
            const double xk = x[static_cast<std::size_t>(k)];
            if (xk == 0.0) { continue; }
            for (int r = k + 1; r < n_; ++r) { x[static_cast<std::size_t>(r)] -= at(r, k) * xk; }
        }
        for (int k = n_ - 1; k >= 0; --k) {
            const double xk = x[static_cast<std::size_t>(k)] / at(k, k);
            x[static_cast<std::size_t>(k)] = xk;
            if (xk == 0.0) { continue; }
            for (int r = 0; r < k; ++r) { x[static_cast<std::size_t>(r)] -= at(r, k) * xk; }
        }
        return;
    }
    scratch.resize(static_cast<std::size_t>(n_));
    double* t = scratch.data();

    // t = P b
    for (int k = 0; k < n_; ++k) {
        t[k] = b[static_cast<std::size_t>(row_of_pos_[static_cast<std::size_t>(k)])];
    }
    // L t = t (unit diagonal first in each column)
    for (int k = 0; k < n_; ++k) {
        const double tk = t[k];
        if (tk == 0.0) { continue; }
        for (std::int64_t p = lp_[static_cast<std::size_t>(k)] + 1;
             p < lp_[static_cast<std::size_t>(k) + 1]; ++p) {
            t[li_[static_cast<std::size_t>(p)]] -= lx_[static_cast<std::size_t>(p)] * tk;
        }
    }
    // U s = t (diagonal stored last in each column)
    for (int k = n_ - 1; k >= 0; --k) {
        const std::int64_t plo = up_[static_cast<std::size_t>(k)];
        const std::int64_t phi = up_[static_cast<std::size_t>(k) + 1];
        const double sk = t[k] / ux_[static_cast<std::size_t>(phi - 1)];
        t[k] = sk;
        if (sk == 0.0) { continue; }
        for (std::int64_t p = plo; p < phi - 1; ++p) {
            t[ui_[static_cast<std::size_t>(p)]] -= ux_[static_cast<std::size_t>(p)] * sk;
        }
    }
    // x = Q s
    for (int j = 0; j < n_; ++j) {
        x[static_cast<std::size_t>(col_perm_[static_cast<std::size_t>(j)])] = t[j];
    }
}

} // namespace weldsim
