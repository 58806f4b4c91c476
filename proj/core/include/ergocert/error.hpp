#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ergocert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed network source. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An operation was called on input that violates its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not reach its tolerance (tiny pivots, singular systems).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A symbolic matrix entry mixes positive and negative rate coefficients, so it has
/// no fixed sign when the rates range over the positive reals.
class SignPatternError : public Error {
 public:
  explicit SignPatternError(std::vector<std::pair<int, int>> entries);

  const std::vector<std::pair<int, int>>& entries() const noexcept { return entries_; }

 private:
  std::vector<std::pair<int, int>> entries_;
};

/// Raised by the stochastic simulator when propensities overflow.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& message, std::vector<long long> state);

  const std::vector<long long>& state() const noexcept { return state_; }

 private:
  std::vector<long long> state_;
};

}  // namespace ergocert
