#pragma once

#include <iosfwd>
#include <string>

#include "cnb/matrix.hpp"

namespace cnb {

// Reads either the plain text format (first line n, then n rows of n decimal
// entries) or a JSON array-of-arrays; the two are distinguished by the first
// non-whitespace character. Throws std::runtime_error with a diagnostic on
// malformed input.
Matrix parse_matrix(const std::string& text);

Matrix read_matrix_file(const std::string& path);

// Plain text writer, 17 significant digits (round-trip exact for doubles).
std::string format_matrix_text(const Matrix& m);

void write_matrix_file(const std::string& path, const Matrix& m);

}  // namespace cnb
