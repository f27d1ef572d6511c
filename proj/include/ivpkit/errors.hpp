#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ivpkit {

/// Malformed graph text. Carries the 1-based line number of the offending record.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A decider was handed a graph that violates its stated precondition
/// (most often: the graph is not domain-total).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bonding-map sequence violates the hypotheses of the connectedness
/// criterion (surjective, connected graph, valid).
class HypothesisError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Enumeration size guard tripped.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Composition produced a two-dimensional piece, which segment unions cannot represent.
class AreaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ivpkit
