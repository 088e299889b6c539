#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specgap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (out-of-range label, bad size...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed graph6 / edge-list / graph-spec text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A state space (or vertex set) would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what_budget, std::size_t requested, std::size_t limit)
      : Error(what_budget + " budget exceeded: requested " + std::to_string(requested) +
              " states, limit " + std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::size_t requested() const { return requested_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t requested_;
  std::size_t limit_;
};

/// An iterative eigensolver ran out of iterations.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A second zero eigenvalue was found: the chain is not irreducible.
class ReducibleChain : public Error {
 public:
  using Error::Error;
};

/// A graph operation would break connectivity or a required structural property.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// The lumping map fails the row-sum condition; carries the witness.
class LumpabilityError : public Error {
 public:
  LumpabilityError(std::size_t x, std::size_t y, std::size_t block, double difference)
      : Error("map is not lumpable: states " + std::to_string(x) + " and " + std::to_string(y) +
              " disagree on the rate into block " + std::to_string(block) + " (difference " +
              std::to_string(difference) + ")"),
        x_(x),
        y_(y),
        block_(block) {}

  std::size_t x() const { return x_; }
  std::size_t y() const { return y_; }
  std::size_t block() const { return block_; }

 private:
  std::size_t x_;
  std::size_t y_;
  std::size_t block_;
};

}  // namespace specgap
