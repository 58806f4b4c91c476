#include "ergocert/linopt.hpp"

#include "ergocert/error.hpp"

#include <algorithm>
#include <cmath>

namespace ergocert::linopt {

bool is_metzler(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) < -tol) return false;
  return true;
}

HurwitzTest is_hurwitz_metzler(const Matrix& m, const SolverOptions& options) {
  if (!is_metzler(m)) throw PreconditionError("Hurwitz LP test requires a Metzler matrix");
  const int d = static_cast<int>(m.rows());
  LinearProblem lp;
  lp.add_variables(d, "v", 1.0, kInf);
  for (int j = 0; j < d; ++j) {
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < d; ++i)
      if (m(i, j) != 0.0) row.emplace_back(i, m(i, j));
    lp.add_inequality(std::move(row), -1.0);
  }
  HurwitzTest out;
  out.lp = solve_feasibility(lp, options);
  out.hurwitz = out.lp.feasible();
  if (out.hurwitz) out.v = out.lp.x;
  return out;
}

bool hurwitz_by_pivots(const Matrix& m) {
  Matrix n = -m;
  const Eigen::Index d = n.rows();
  const double scale = std::max(1.0, n.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < d; ++k) {
    const double pivot = n(k, k);
    if (!(pivot > 1e-300 * scale)) return false;
    for (Eigen::Index i = k + 1; i < d; ++i) {
      const double f = n(i, k) / pivot;
      if (f == 0.0) continue;
      n.row(i).tail(d - k) -= f * n.row(k).tail(d - k);
    }
  }
  return true;
}

double pf_eigenvalue(const Matrix& m, double tol) {
  if (!is_metzler(m)) throw PreconditionError("Perron-Frobenius eigenvalue requires a Metzler matrix");
  const Eigen::Index d = m.rows();
  if (d == 0) throw PreconditionError("empty matrix");
  // max_i M_ii <= lambda_PF <= min(max row sum, max column sum)
  double lo = m.diagonal().maxCoeff();
  double hi = std::min(m.rowwise().sum().maxCoeff(), m.colwise().sum().maxCoeff());
  if (hi - lo <= tol) return 0.5 * (lo + hi);
  const Matrix id = Matrix::Identity(d, d);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (hurwitz_by_pivots(m - mid * id))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

Matrix inverse(const Matrix& m, double pivot_tol) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
  Eigen::PartialPivLU<Matrix> lu(m);
  const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
  const double smallest = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(smallest > pivot_tol * scale)) throw NumericalError("matrix is singular to working precision");
  return lu.inverse();
}

bool inverse_nonpositive(const Matrix& m, Matrix* inverse_out) {
  Matrix inv = inverse(m);
  const bool ok = inv.maxCoeff() <= 1e-10;
  if (inverse_out) *inverse_out = std::move(inv);
  return ok;
}

}  // namespace ergocert::linopt
