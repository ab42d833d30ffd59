#include "polar/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace polar::io {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool isBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Splits text into lines, tolerating CRLF.
std::vector<std::string_view> splitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

double parseNumber(std::string_view token, int line, int column) {
  std::size_t b = 0;
  while (b < token.size() && std::isspace(static_cast<unsigned char>(token[b]))) ++b;
  std::size_t e = token.size();
  while (e > b && std::isspace(static_cast<unsigned char>(token[e - 1]))) --e;
  const std::string_view trimmed = token.substr(b, e - b);
  if (trimmed.empty()) throw ParseError("empty entry", line, column);
  std::string_view digits = trimmed;
  if (digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("not a number: '" + std::string(trimmed) + "'", line, column + static_cast<int>(b));
  }
  if (!std::isfinite(value)) throw ParseError("non-finite entry", line, column + static_cast<int>(b));
  return value;
}

Matrix parseCsv(std::string_view text) {
  const std::vector<std::string_view> lines = splitLines(text);
  std::vector<std::vector<double>> rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view line = lines[li];
    const int lineNo = static_cast<int>(li) + 1;
    if (isBlank(line)) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) comma = line.size();
      row.push_back(parseNumber(line.substr(start, comma - start), lineNo, static_cast<int>(start) + 1));
      if (comma == line.size()) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(rows.front().size()),
                       lineNo, 0);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no matrix entries", 1, 0);
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = static_cast<Eigen::Index>(rows.front().size());
  if (m != n) throw Error(Errc::NotSquare, "matrix is " + std::to_string(m) + "x" + std::to_string(n));
  Matrix a(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return a;
}

Matrix parseMatrixMarket(std::string_view text) {
  const std::vector<std::string_view> lines = splitLines(text);
  if (lines.empty() || lines.front().rfind("%%MatrixMarket", 0) != 0) {
    throw ParseError("missing %%MatrixMarket header", 1, 1);
  }
  std::istringstream header{std::string(lines.front())};
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  if (lower(object) != "matrix" || lower(layout) != "array" || lower(field) != "real" ||
      lower(symmetry) != "general") {
    throw ParseError("only 'matrix array real general' is supported", 1, 0);
  }

  Eigen::Index rows = -1;
  Eigen::Index cols = -1;
  std::vector<double> values;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::string_view line = lines[li];
    const int lineNo = static_cast<int>(li) + 1;
    if (isBlank(line) || line.front() == '%') continue;
    std::size_t pos = 0;
    std::vector<std::pair<std::string_view, int>> tokens;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      tokens.emplace_back(line.substr(pos, end - pos), static_cast<int>(pos) + 1);
      pos = end;
    }
    if (rows < 0) {
      if (tokens.size() != 2) throw ParseError("size line must be 'rows cols'", lineNo, 0);
      const double r = parseNumber(tokens[0].first, lineNo, tokens[0].second);
      const double c = parseNumber(tokens[1].first, lineNo, tokens[1].second);
      if (r < 1 || c < 1 || r != std::floor(r) || c != std::floor(c)) {
        throw ParseError("invalid matrix size", lineNo, 0);
      }
      rows = static_cast<Eigen::Index>(r);
      cols = static_cast<Eigen::Index>(c);
      if (rows != cols) {
        throw Error(Errc::NotSquare, "matrix is " + std::to_string(rows) + "x" + std::to_string(cols));
      }
      continue;
    }
    for (const auto& [token, column] : tokens) {
      if (static_cast<Eigen::Index>(values.size()) == rows * cols) {
        throw ParseError("more entries than rows * cols", lineNo, column);
      }
      values.push_back(parseNumber(token, lineNo, column));
    }
  }
  if (rows < 0) throw ParseError("missing size line", static_cast<int>(lines.size()), 0);
  if (static_cast<Eigen::Index>(values.size()) != rows * cols) {
    throw ParseError("expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(values.size()),
                     static_cast<int>(lines.size()), 0);
  }
  Matrix a(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = values[k++];
  }
  return a;
}

}  // namespace

MatrixFormat parseMatrixFormat(std::string_view name) {
  const std::string n = lower(name);
  if (n == "csv") return MatrixFormat::CSV;
  if (n == "mm" || n == "matrixmarket" || n == "mtx") return MatrixFormat::MatrixMarketArray;
  throw Error(Errc::InvalidArgument, "unknown matrix format '" + std::string(name) + "'");
}

Matrix parseMatrix(std::string_view text, MatrixFormat format) {
  return format == MatrixFormat::CSV ? parseCsv(text) : parseMatrixMarket(text);
}

Matrix ingestMatrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseMatrix(buffer.str(), format);
}

std::string formatNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string formatMatrix(const Matrix& a, MatrixFormat format) {
  std::string out;
  if (format == MatrixFormat::CSV) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if (j > 0) out += ',';
        out += formatNumber(a(i, j));
      }
      out += '\n';
    }
    return out;
  }
  out += "%%MatrixMarket matrix array real general\n";
  out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) out += formatNumber(a(i, j)) + "\n";
  }
  return out;
}

void writeMatrix(const std::string& path, const Matrix& a, MatrixFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  out << formatMatrix(a, format);
  if (!out) throw Error(Errc::Io, "write to '" + path + "' failed");
}

}  // namespace polar::io
