#pragma once

#include <string>
#include <vector>

#include "gpbose/sparse_op.hpp"

namespace gpbose {

// 17 significant digits, '.' decimal separator
std::string format_sig17(double v);

void write_text_file(const std::string& path, const std::string& content);

// comma-separated table; every cell already formatted
std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

// coordinate-triplet text format: "row col re im" per entry, row-major order
std::string render_coo(const SparseMatrix& m);
SparseMatrix parse_coo(const std::string& text, long rows, long cols);

}  // namespace gpbose
