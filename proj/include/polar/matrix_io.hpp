#pragma once

#include <string>
#include <string_view>

#include "polar/linalg.hpp"

namespace polar::io {

enum class MatrixFormat { MatrixMarketArray, CSV };

/// "mm" / "matrixmarket" / "csv" (case-insensitive). Throws InvalidArgument.
MatrixFormat parseMatrixFormat(std::string_view name);

/// Dense real matrix from text. CSV is row-major, one row per line.
/// MatrixMarket follows the array format: header, optional % comments, a
/// "rows cols" line, then entries in column-major order. Throws ParseError
/// (with line/column) or NotSquare.
Matrix parseMatrix(std::string_view text, MatrixFormat format);

/// Reads `path` and parses it; unreadable files throw Io.
Matrix ingestMatrix(const std::string& path, MatrixFormat format);

/// Text form with 17 significant digits per entry.
std::string formatMatrix(const Matrix& a, MatrixFormat format);

/// Writes formatMatrix(a) to `path`; throws Io on failure.
void writeMatrix(const std::string& path, const Matrix& a, MatrixFormat format);

/// printf("%.17g").
std::string formatNumber(double x);

}  // namespace polar::io
