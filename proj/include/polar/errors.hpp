#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polar {

enum class Errc {
  NonFiniteInput,
  NotSquare,
  NotOrthogonal,
  DifferentComponents,
  NonUniqueGeodesic,
  PhaseAtPi,
  ZeroMatrix,
  StepOutsideInjectivity,
  SingularInput,
  NoConvergence,
  ParseError,
  InvalidArgument,
  Io,
};

std::string_view errcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errcName(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Malformed matrix file. Line and column are 1-based; column 0 means the
// whole line is at fault.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(Errc::ParseError, what + " (line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace polar
