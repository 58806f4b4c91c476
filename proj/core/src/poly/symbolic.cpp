#include "ergocert/error.hpp"
#include "ergocert/poly.hpp"

#include <bit>
#include <unordered_map>

namespace ergocert::poly {

namespace {

void guard(int d, int vars) {
  if (d > kMaxSymbolicDim)
    throw PreconditionError("symbolic determinant limited to " + std::to_string(kMaxSymbolicDim) + "x" +
                            std::to_string(kMaxSymbolicDim) + " matrices");
  if (vars > kMaxSymbolicVars)
    throw PreconditionError("symbolic determinant limited to " + std::to_string(kMaxSymbolicVars) + " symbols");
}

const std::vector<std::string>& vars_of(const PolyMatrix& m) {
  static const std::vector<std::string> none;
  return m.empty() || m[0].empty() ? none : m[0][0].variables();
}

// Laplace expansion along rows 0..r-1, memoised on the set of columns used.
MultiPoly det_sub(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int n = static_cast<int>(rows.size());
  const auto& vars = vars_of(m);
  if (n == 0) return MultiPoly::constant(vars, 1.0);
  std::unordered_map<unsigned, MultiPoly> memo;
  memo.emplace(0u, MultiPoly::constant(vars, 1.0));
  for (int r = 1; r <= n; ++r) {
    std::unordered_map<unsigned, MultiPoly> next;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != r) continue;
      MultiPoly acc(vars);
      int position = 0;  // rank of column j inside mask, for the cofactor sign
      for (int j = 0; j < n; ++j) {
        if (!(mask & (1u << j))) continue;
        const MultiPoly& entry = m[rows[r - 1]][cols[j]];
        if (!entry.is_zero()) {
          const double s = (r - 1 + position) % 2 == 0 ? 1.0 : -1.0;
          const MultiPoly& minor = memo.at(mask & ~(1u << j));
          if (!minor.is_zero()) acc += (entry * minor) * s;
        }
        ++position;
      }
      next.emplace(mask, std::move(acc));
    }
    memo = std::move(next);
  }
  MultiPoly out = memo.at((1u << n) - 1);
  out.prune(1e-14);
  return out;
}

}  // namespace

PolyMatrix to_poly_matrix(const model::AffineMatrix& m) {
  const auto& vars = m.symbols();
  PolyMatrix out(m.rows(), std::vector<MultiPoly>(m.cols(), MultiPoly(vars)));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const auto [c, terms] = m.entry(i, j);
      MultiPoly p = MultiPoly::constant(vars, c);
      for (const auto& [k, coeff] : terms) p += MultiPoly::variable(vars, k) * coeff;
      out[i][j] = std::move(p);
    }
  }
  return out;
}

Eigen::MatrixXd evaluate(const PolyMatrix& m, std::span<const double> x) {
  const Eigen::Index rows = static_cast<Eigen::Index>(m.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(m[0].size()) : 0;
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = m[i][j].evaluate(x);
  return out;
}

MultiPoly det_poly(const PolyMatrix& m) {
  const int d = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != d) throw PreconditionError("determinant of a non-square matrix");
  guard(d, static_cast<int>(vars_of(m).size()));
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  return det_sub(m, idx, idx);
}

MultiPoly det_poly(const model::AffineMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  guard(m.rows(), static_cast<int>(m.symbols().size()));
  return det_poly(to_poly_matrix(m));
}

PolyMatrix adjugate_poly(const model::AffineMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("adjugate of a non-square matrix");
  const int d = m.rows();
  guard(d, static_cast<int>(m.symbols().size()));
  const PolyMatrix pm = to_poly_matrix(m);
  PolyMatrix adj(d, std::vector<MultiPoly>(d, MultiPoly(m.symbols())));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      // Adj(M)_ij = (-1)^(i+j) det(M without row j and column i)
      std::vector<int> rows, cols;
      for (int r = 0; r < d; ++r)
        if (r != j) rows.push_back(r);
      for (int c = 0; c < d; ++c)
        if (c != i) cols.push_back(c);
      MultiPoly minor = det_sub(pm, rows, cols);
      adj[i][j] = (i + j) % 2 == 0 ? minor : -minor;
    }
  }
  return adj;
}

}  // namespace ergocert::poly
