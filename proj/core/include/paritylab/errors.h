#ifndef PARITYLAB_ERRORS_H_
#define PARITYLAB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paritylab {

// Bad inputs (out-of-range vertex, overlapping blocks, vectors outside the
// unit ball, ...) are reported with std::invalid_argument.

// A configured size guard would be exceeded (tensor order, dense
// materialization, enumeration of U_k, brute-force search).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance, vector or config file. `line` is 1-based, 0 when the
// problem is not tied to a line (e.g. missing rows at end of file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " +
                                           what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Experiment specs that violate their own invariants (empty grids, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace paritylab

#endif  // PARITYLAB_ERRORS_H_
