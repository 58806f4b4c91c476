#include "internal.hpp"

#include "ergocert/error.hpp"

#include <cmath>

namespace ergocert::analysis {

Matrix left_annihilator(const Matrix& Sb) {
  const int d = static_cast<int>(Sb.rows());
  if (Sb.cols() == 0) return Matrix::Identity(d, d);
  // reduced row echelon form of Sb^T; its null space holds the rows of P
  Matrix R = Sb.transpose();
  const double tol = 1e-12 * std::max(1.0, R.cwiseAbs().maxCoeff());
  std::vector<int> pivot_cols;
  int row = 0;
  for (int col = 0; col < d && row < R.rows(); ++col) {
    Eigen::Index best;
    const double mag = R.col(col).segment(row, R.rows() - row).cwiseAbs().maxCoeff(&best);
    if (mag <= tol) continue;
    R.row(row).swap(R.row(row + best));
    R.row(row) /= R(row, col);
    for (Eigen::Index r = 0; r < R.rows(); ++r)
      if (r != row && R(r, col) != 0.0) R.row(r) -= R(r, col) * R.row(row);
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<int> free_cols;
  for (int c = 0, k = 0; c < d; ++c) {
    if (k < static_cast<int>(pivot_cols.size()) && pivot_cols[k] == c)
      ++k;
    else
      free_cols.push_back(c);
  }
  Matrix P = Matrix::Zero(static_cast<Eigen::Index>(free_cols.size()), d);
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    P(f, free_cols[f]) = 1.0;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
      const double x = -R(r, free_cols[f]);
      P(f, pivot_cols[r]) = std::abs(x) <= tol ? 0.0 : x;
    }
  }
  return P;
}

namespace detail {

BimolecularReduction reduce_affine(const model::AffineMatrix& A, const Matrix& Sb) {
  BimolecularReduction red;
  red.perp = left_annihilator(Sb);
  const model::AffineMatrix PA = A.left_multiply(red.perp);
  const int r = static_cast<int>(red.perp.rows());
  for (int j = 0; j < PA.cols(); ++j) {
    bool nonpositive = true;
    bool negative = false;
    for (int i = 0; i < r; ++i) {
      const auto [c, terms] = PA.entry(i, j);
      if (c > 0.0) nonpositive = false;
      if (c < 0.0) negative = true;
      for (const auto& [k, coeff] : terms) {
        if (coeff > 0.0) nonpositive = false;
        if (coeff < 0.0) negative = true;
      }
    }
    if (nonpositive && negative && Sb.cols() > 0)
      red.dropped.push_back(j);
    else
      red.kept.push_back(j);
  }
  red.reduced = PA.select_columns(red.kept);

  bool partition = true;
  for (Eigen::Index j = 0; j < red.perp.cols(); ++j) {
    int ones = 0;
    for (Eigen::Index i = 0; i < red.perp.rows(); ++i) {
      const double x = red.perp(i, j);
      if (x == 1.0)
        ++ones;
      else if (x != 0.0)
        partition = false;
    }
    if (ones != 1) partition = false;
  }
  bool metzler = static_cast<int>(red.kept.size()) == r;
  for (int i = 0; metzler && i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const auto [c, terms] = red.reduced.entry(i, j);
      if (c < 0.0) metzler = false;
      for (const auto& [k, coeff] : terms)
        if (coeff < 0.0) metzler = false;
    }
  }
  red.exact = partition && metzler;
  return red;
}

std::vector<double> random_point(const std::vector<poly::Interval>& box, unsigned long long& state) {
  std::vector<double> x(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    // splitmix64 step
    unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
    x[i] = box[i].lo + u * (box[i].hi - box[i].lo);
  }
  return x;
}

}  // namespace detail

BimolecularReduction reduce_bimolecular(const model::CharacteristicModel& cm) {
  return detail::reduce_affine(cm.A, cm.Sb);
}

}  // namespace ergocert::analysis
