#pragma once

#include <iosfwd>
#include <string>

#include "weldsim/csr_matrix.hpp"

namespace weldsim {

/// Write in Matrix Market coordinate format (real, general), 1-based.
void write_matrix_market(const CsrMatrix& a, std::ostream& os);
void write_matrix_market(const CsrMatrix& a, const std::string& path);

/// Read a Matrix Market file (coordinate, real/integer, general).
/// Duplicate entries are summed. Throws IoError on malformed input.
CsrMatrix read_matrix_market(std::istream& is);
CsrMatrix read_matrix_market(const std::string& path);

} // namespace weldsim
