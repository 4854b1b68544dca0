#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "weldsim/csr_matrix.hpp"

namespace weldsim {

struct LuOptions {
    /// Fill-reducing column order, perm[position] = original column.
    /// Empty = natural order. For node-blocked mesh matrices pass a
    /// lattice nested-dissection order (see ordering.hpp).
    std::vector<int> perm;
    /// Threshold partial pivoting: the diagonal candidate is kept when
    /// |a_qq| >= pivot_threshold * max|column|; otherwise the largest
    /// off-diagonal row pivots. 1.0 = classical partial pivoting.
    double pivot_threshold = 0.1;
    /// Systems up to this size are factorized densely.
    int dense_threshold = 500;
};

/// Exact LU factorization P A Q = L U of a square sparse matrix with
/// row pivoting (P) and a caller-chosen column order (Q).
///
/// The factorization is immutable after construction; concurrent solves
/// are safe as long as each call uses its own scratch buffer.
class LuFactors {
public:
    int n() const { return n_; }
    bool dense() const { return dense_; }
    std::int64_t nnz_l() const;
    std::int64_t nnz_u() const;

    /// x = A^{-1} b, allocating scratch internally.
    std::vector<double> solve(std::span<const double> b) const;
    /// x = A^{-1} b with caller-provided scratch (resized to n).
    void solve(std::span<const double> b, std::span<double> x, std::vector<double>& scratch) const;

private:
    friend LuFactors lu_factor(const CsrMatrix&, LuOptions);

    int n_ = 0;
    bool dense_ = false;

    // Sparse factors in CSC with rows in pivot numbering. L has a unit
    // diagonal stored first in each column; U stores its diagonal last.
    std::vector<std::int64_t> lp_, up_;
    std::vector<int> li_, ui_;
    std::vector<double> lx_, ux_;
    std::vector<int> row_of_pos_;  ///< original row at pivot position k
    std::vector<int> col_perm_;    ///< original column at factor column j

    // Dense fallback (column-major) with partial-pivot row swaps.
    std::vector<double> dense_a_;
    std::vector<int> dense_ipiv_;
};

/// Factorize a square, structurally nonsingular sparse matrix.
/// Throws SingularMatrixError when no admissible pivot exists.
LuFactors lu_factor(const CsrMatrix& a, LuOptions options = {});

} // namespace weldsim
