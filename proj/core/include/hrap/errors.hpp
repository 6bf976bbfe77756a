#pragma once

#include <stdexcept>
#include <string>

namespace hrap {

// Input data violates a documented invariant (bad ranges, duplicates,
// inconsistent rows).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally malformed file contents (headers, field counts, unparsable
// numbers). Messages carry a line number where one is known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Solver-side contract violation: fractional values where integers are
// required, combinatorial guards exceeded, missing cost entries.
class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hrap
