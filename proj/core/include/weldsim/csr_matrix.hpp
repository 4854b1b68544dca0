#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace weldsim {

/// Compressed sparse row matrix with 64-bit values. Column indices are
/// sorted and duplicate-free within each row.
struct CsrMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<std::int64_t> row_ptr;  ///< size n_rows + 1
    std::vector<int> col;
    std::vector<double> val;

    std::int64_t nnz() const { return row_ptr.empty() ? 0 : row_ptr.back(); }

    /// y = A * x
    void spmv(std::span<const double> x, std::span<double> y) const;

    /// Value at (r, c), 0 if not stored. Binary search within the row.
    double at(int r, int c) const;
    /// Pointer to the stored value at (r, c), nullptr if not present.
    double* find(int r, int c);
};

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// Build a CSR matrix from (row, col, value) triplets. Duplicates are
/// summed in finite-element fashion; the result is independent of the
/// triplet order (duplicates are combined in a canonical sort order).
/// Out-of-range indices throw std::invalid_argument.
CsrMatrix csr_from_triplets(int n_rows, int n_cols, std::vector<Triplet> triplets);

/// Explicit transpose (also used as a CSC view of the input).
CsrMatrix csr_transpose(const CsrMatrix& a);

/// Extract the square submatrix A(idx, idx) in the order given by idx.
/// idx must contain unique, in-range indices.
CsrMatrix extract_submatrix(const CsrMatrix& a, std::span<const int> idx);

/// Extract A(idx, idx) keeping only entries whose row and column DoFs belong
/// to the same field under the node-blocked 4-DoF layout (fields u = 0..2
/// and theta = 3). Used for the block-diagonal operator of the economic
/// coarse space.
CsrMatrix extract_submatrix_field_diag(const CsrMatrix& a, std::span<const int> idx);

} // namespace weldsim
