#pragma once

#include "jpl/ordering.hpp"
#include "jpl/sym_matrix.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <string_view>

namespace jpl {

/// "1 2, 1 3, 2 3": one-based pairs separated by commas. The dimension is
/// inferred from the pair count. Throws ParseError.
PivotOrdering parse_ordering(std::string_view text);
std::string format_ordering(const PivotOrdering& o);

/// Image list "2 1 4 3" (one-based).
IndexPermutation parse_permutation(std::string_view text);
std::string format_permutation(const IndexPermutation& q);

/// Line format:
///   source: <ordering>
///   T <position>          zero-based position of the left pair
///   S <length>
///   P <one-based image list>
///   target: <ordering>
std::string format_certificate(const Certificate& cert);
Certificate parse_certificate(std::string_view text);

/// Whitespace-separated row-major square matrix; the size is the square root
/// of the entry count.
Eigen::MatrixXd parse_square_matrix(std::string_view text);
/// Same literal, additionally checked for symmetry (1e-12 relative).
SymMatrixd parse_sym_matrix(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace jpl
