#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace argeslab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph/SEM/CSV text. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structural invariant violated (self loop, conflicting pair, index out of range).
class GraphError : public Error {
 public:
  using Error::Error;
};

class AcyclicityError : public GraphError {
 public:
  using GraphError::GraphError;
};

/// No DAG extends the given partially directed graph.
class ExtensionError : public GraphError {
 public:
  using GraphError::GraphError;
};

/// Orientation rules produced a contradiction.
class InconsistencyError : public GraphError {
 public:
  using GraphError::GraphError;
};

class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// A correlation submatrix that must be positive definite is not.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, int i, int j, std::vector<int> cond)
      : Error(what), i_(i), j_(j), cond_(std::move(cond)) {}
  int i() const { return i_; }
  int j() const { return j_; }
  const std::vector<int>& conditioning() const { return cond_; }

 private:
  int i_, j_;
  std::vector<int> cond_;
};

class DegenerateColumnError : public Error {
 public:
  DegenerateColumnError(const std::string& what, int column) : Error(what), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

/// |rho| = 1: the score difference would be minus infinity.
class DeterministicDependenceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (stale move, cache conflict, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace argeslab
