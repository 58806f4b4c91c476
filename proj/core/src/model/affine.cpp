#include "ergocert/error.hpp"
#include "ergocert/model.hpp"

namespace ergocert::model {

AffineMatrix::AffineMatrix(int rows, int cols) : constant_(Matrix::Zero(rows, cols)) {}

AffineMatrix::AffineMatrix(Matrix constant) : constant_(std::move(constant)) {}

int AffineMatrix::symbol_index(std::string_view symbol) const {
  for (std::size_t k = 0; k < symbols_.size(); ++k)
    if (symbols_[k] == symbol) return static_cast<int>(k);
  return -1;
}

void AffineMatrix::add_constant(const Matrix& m) {
  if (m.rows() != constant_.rows() || m.cols() != constant_.cols())
    throw PreconditionError("affine matrix: shape mismatch");
  constant_ += m;
}

void AffineMatrix::add_term(const std::string& symbol, const Matrix& coefficient) {
  if (coefficient.rows() != constant_.rows() || coefficient.cols() != constant_.cols())
    throw PreconditionError("affine matrix: shape mismatch");
  const int k = symbol_index(symbol);
  if (k >= 0) {
    coefficients_[k] += coefficient;
    return;
  }
  symbols_.push_back(symbol);
  coefficients_.push_back(coefficient);
}

Matrix AffineMatrix::evaluate(std::span<const double> values) const {
  if (values.size() != symbols_.size()) throw PreconditionError("affine matrix: wrong number of values");
  Matrix out = constant_;
  for (std::size_t k = 0; k < symbols_.size(); ++k) out += values[k] * coefficients_[k];
  return out;
}

Matrix AffineMatrix::evaluate(const std::function<double(const std::string&)>& value_of) const {
  Matrix out = constant_;
  for (std::size_t k = 0; k < symbols_.size(); ++k) out += value_of(symbols_[k]) * coefficients_[k];
  return out;
}

Matrix AffineMatrix::evaluate(const std::map<std::string, double>& values) const {
  return evaluate([&](const std::string& s) {
    auto it = values.find(s);
    if (it == values.end()) throw PreconditionError("no value for symbol '" + s + "'");
    return it->second;
  });
}

AffineMatrix AffineMatrix::substitute(const std::map<std::string, double>& values) const {
  AffineMatrix out(constant_);
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    auto it = values.find(symbols_[k]);
    if (it != values.end())
      out.constant_ += it->second * coefficients_[k];
    else
      out.add_term(symbols_[k], coefficients_[k]);
  }
  return out;
}

AffineMatrix AffineMatrix::left_multiply(const Matrix& left) const {
  AffineMatrix out(Matrix(left * constant_));
  for (std::size_t k = 0; k < symbols_.size(); ++k) out.add_term(symbols_[k], left * coefficients_[k]);
  return out;
}

AffineMatrix AffineMatrix::select_columns(const std::vector<int>& cols) const {
  auto pick = [&](const Matrix& m) {
    Matrix r(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) r.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
    return r;
  };
  AffineMatrix out(pick(constant_));
  for (std::size_t k = 0; k < symbols_.size(); ++k) out.add_term(symbols_[k], pick(coefficients_[k]));
  return out;
}

std::pair<double, std::vector<std::pair<int, double>>> AffineMatrix::entry(int i, int j) const {
  std::vector<std::pair<int, double>> terms;
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    const double c = coefficients_[k](i, j);
    if (c != 0.0) terms.emplace_back(static_cast<int>(k), c);
  }
  return {constant_(i, j), std::move(terms)};
}

}  // namespace ergocert::model
