#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slide {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x <= 0 for
// log_gamma, a non-positive distance, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Too few elements (fewer than two points, an empty distance sequence).
class SizeError : public Error {
 public:
  using Error::Error;
};

// Two points of a set coincide, so some nearest-neighbor distance is zero.
class DuplicatePointError : public Error {
 public:
  DuplicatePointError(std::size_t first, std::size_t second)
      : Error("duplicate points at indices " + std::to_string(first) + " and " +
              std::to_string(second)),
        first_(first),
        second_(second) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

// An integral or series failed to converge within its refinement budget.
// lo/hi identify the offending sub-interval in the caller's coordinates.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

// Invalid user configuration: unknown catalog name, bad process parameters,
// inconsistent experiment settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. line is 1-based; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A report or output file could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace slide
