#include "ergocert/error.hpp"

#include <sstream>

namespace ergocert {

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << message;
  return os.str();
}

std::string describe_entries(const std::vector<std::pair<int, int>>& entries) {
  std::ostringstream os;
  os << "indeterminate sign at entr" << (entries.size() == 1 ? "y" : "ies");
  for (const auto& [i, j] : entries) os << " (" << i + 1 << "," << j + 1 << ")";
  os << ": the entry mixes catalytic and degrading/converting rates";
  return os.str();
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(located(message, line, column)), line_(line), column_(column) {}

SignPatternError::SignPatternError(std::vector<std::pair<int, int>> entries)
    : Error(describe_entries(entries)), entries_(std::move(entries)) {}

SimulationError::SimulationError(const std::string& message, std::vector<long long> state)
    : Error(message), state_(std::move(state)) {}

}  // namespace ergocert
