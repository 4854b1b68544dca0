#include "weldsim/matrix_market.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "weldsim/errors.hpp"

namespace weldsim {

void write_matrix_market(const CsrMatrix& a, std::ostream& os) {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
    os << std::setprecision(17);
    for (int r = 0; r < a.n_rows; ++r) {
        for (std::int64_t k = a.row_ptr[static_cast<std::size_t>(r)];
             k < a.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
            os << r + 1 << " " << a.col[static_cast<std::size_t>(k)] + 1 << " "
               << a.val[static_cast<std::size_t>(k)] << "\n";
        }
    }
}

void write_matrix_market(const CsrMatrix& a, const std::string& path) {
    std::ofstream os(path);
    if (!os) { throw IoError("write_matrix_market: cannot open " + path); }
    write_matrix_market(a, os);
}

CsrMatrix read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) { throw IoError("read_matrix_market: empty stream"); }
    if (line.rfind("%%MatrixMarket", 0) != 0 || line.find("coordinate") == std::string::npos) {
        throw IoError("read_matrix_market: unsupported header: " + line);
    }
    if (line.find("complex") != std::string::npos || line.find("pattern") != std::string::npos) {
        throw IoError("read_matrix_market: only real/integer matrices are supported");
    }
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '%') { break; }
    }
    std::istringstream header(line);
    int n_rows = 0, n_cols = 0;
    std::int64_t nnz = 0;
    if (!(header >> n_rows >> n_cols >> nnz)) {
        throw IoError("read_matrix_market: malformed size line: " + line);
    }

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(nnz));
    for (std::int64_t k = 0; k < nnz; ++k) {
        int r = 0, c = 0;
        double v = 0.0;
        if (!(is >> r >> c >> v)) { throw IoError("read_matrix_market: truncated entry list"); }
        triplets.push_back({r - 1, c - 1, v});
    }
    try {
        return csr_from_triplets(n_rows, n_cols, std::move(triplets));
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("read_matrix_market: ") + e.what());
    }
}

CsrMatrix read_matrix_market(const std::string& path) {
    std::ifstream is(path);
    if (!is) { throw IoError("read_matrix_market: cannot open " + path); }
    return read_matrix_market(is);
}

} // namespace weldsim
