#include "weldsim/csr_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace weldsim {

void CsrMatrix::spmv(std::span<const double> x, std::span<double> y) const {
    for (int r = 0; r < n_rows; ++r) {
        double acc = 0.0;
        for (std::int64_t k = row_ptr[static_cast<std::size_t>(r)];
             k < row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
            acc += val[static_cast<std::size_t>(k)] *
                   x[static_cast<std::size_t>(col[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(r)] = acc;
    }
}

double CsrMatrix::at(int r, int c) const {
    const auto lo = row_ptr[static_cast<std::size_t>(r)];
    const auto hi = row_ptr[static_cast<std::size_t>(r) + 1];
    const auto* begin = col.data() + lo;
    const auto* end = col.data() + hi;
    const auto* it = std::lower_bound(begin, end, c);
    if (it != end && *it == c) { return val[static_cast<std::size_t>(lo + (it - begin))]; }
    return 0.0;
}

double* CsrMatrix::find(int r, int c) {
    const auto lo = row_ptr[static_cast<std::size_t>(r)];
    const auto hi = row_ptr[static_cast<std::size_t>(r) + 1];
    const auto* begin = col.data() + lo;
    const auto* end = col.data() + hi;
    const auto* it = std::lower_bound(begin, end, c);
    if (it != end && *it == c) { return val.data() + static_cast<std::size_t>(lo + (it - begin)); }
    return nullptr;
}

CsrMatrix csr_from_triplets(int n_rows, int n_cols, std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
            throw std::invalid_argument("csr_from_triplets: index (" + std::to_string(t.row) +
                                        ", " + std::to_string(t.col) + ") out of range");
        }
    }
    // Canonical order (row, col, value) so that duplicate accumulation is
    // independent of the input order.
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        if (a.row != b.row) { return a.row < b.row; }
        if (a.col != b.col) { return a.col < b.col; }
        return a.value < b.value;
    });

    CsrMatrix m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    m.row_ptr.assign(static_cast<std::size_t>(n_rows) + 1, 0);
    m.col.reserve(triplets.size());
    m.val.reserve(triplets.size());

    std::size_t i = 0;
    for (int r = 0; r < n_rows; ++r) {
        while (i < triplets.size() && triplets[i].row == r) {
            const int c = triplets[i].col;
            double acc = 0.0;
            while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
                acc += triplets[i].value;
                ++i;
            }
            m.col.push_back(c);
            m.val.push_back(acc);
        }
        m.row_ptr[static_cast<std::size_t>(r) + 1] = static_cast<std::int64_t>(m.col.size());
    }
    return m;
}

CsrMatrix csr_transpose(const CsrMatrix& a) {
    CsrMatrix t;
    t.n_rows = a.n_cols;
    t.n_cols = a.n_rows;
    t.row_ptr.assign(static_cast<std::size_t>(a.n_cols) + 1, 0);
    t.col.resize(static_cast<std::size_t>(a.nnz()));
    t.val.resize(static_cast<std::size_t>(a.nnz()));

    for (std::int64_t k = 0; k < a.nnz(); ++k) {
        ++t.row_ptr[static_cast<std::size_t>(a.col[static_cast<std::size_t>(k)]) + 1];
    }
    for (std::size_t r = 0; r < static_cast<std::size_t>(t.n_rows); ++r) {
        t.row_ptr[r + 1] += t.row_ptr[r];
    }
    std::vector<std::int64_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (int r = 0; r < a.n_rows; ++r) {
        for (std::int64_t k = a.row_ptr[static_cast<std::size_t>(r)];
             k < a.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
            const int c = a.col[static_cast<std::size_t>(k)];
            const auto pos = next[static_cast<std::size_t>(c)]++;
            t.col[static_cast<std::size_t>(pos)] = r;
            t.val[static_cast<std::size_t>(pos)] = a.val[static_cast<std::size_t>(k)];
        }
    }
    return t;
}

namespace {

CsrMatrix extract_impl(const CsrMatrix& a, std::span<const int> idx, bool field_diag_only) {
    const int n = static_cast<int>(idx.size());
    std::vector<int> global_to_local(static_cast<std::size_t>(a.n_cols), -1);
    for (int i = 0; i < n; ++i) {
        if (idx[static_cast<std::size_t>(i)] < 0 || idx[static_cast<std::size_t>(i)] >= a.n_rows) {
            throw std::invalid_argument("extract_submatrix: index out of range");
        }
        global_to_local[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = i;
    }

    CsrMatrix s;
    s.n_rows = n;
    s.n_cols = n;
    s.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);

    const auto same_field = [](int gr, int gc) {
        const bool ru = gr % 4 < 3;
        const bool cu = gc % 4 < 3;
        return ru == cu;
    };

    std::vector<std::pair<int, double>> row_buf;
    for (int i = 0; i < n; ++i) {
        const int gr = idx[static_cast<std::size_t>(i)];
        row_buf.clear();
        for (std::int64_t k = a.row_ptr[static_cast<std::size_t>(gr)];
             k < a.row_ptr[static_cast<std::size_t>(gr) + 1]; ++k) {
            const int gc = a.col[static_cast<std::size_t>(k)];
            const int lc = global_to_local[static_cast<std::size_t>(gc)];
            if (lc < 0) { continue; }
            if (field_diag_only && !same_field(gr, gc)) { continue; }
            row_buf.emplace_back(lc, a.val[static_cast<std::size_t>(k)]);
        }
        std::sort(row_buf.begin(), row_buf.end());
        for (const auto& [c, v] : row_buf) {
            s.col.push_back(c);
            s.val.push_back(v);
        }
        s.row_ptr[static_cast<std::size_t>(i) + 1] = static_cast<std::int64_t>(s.col.size());
    }
    return s;
}

} // namespace

CsrMatrix extract_submatrix(const CsrMatrix& a, std::span<const int> idx) {
    return extract_impl(a, idx, false);
}

CsrMatrix extract_submatrix_field_diag(const CsrMatrix& a, std::span<const int> idx) {
    return extract_impl(a, idx, true);
}

} // namespace weldsim
