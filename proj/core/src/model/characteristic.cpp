#include "ergocert/error.hpp"
#include "ergocert/linopt.hpp"
#include "ergocert/model.hpp"

#include <set>
#include <sstream>

namespace ergocert::model {

CharacteristicModel characteristic_model(const StoichiometricDecomposition& dec) {
  CharacteristicModel m;
  const int d = dec.d();
  m.species = dec.species;
  m.A = AffineMatrix(d, d);
  m.b0 = AffineMatrix(d, 1);
  for (int k : dec.s0) {
    m.b0.add_term(dec.rates[k], dec.S.col(k).cast<double>());
    m.zeroth_symbols.push_back(dec.rates[k]);
  }
  // column reactant(k) of A receives rho_k * S_k
  auto first_order = [&](const std::vector<int>& cols, std::vector<std::string>& names) {
    for (int k : cols) {
      Matrix coeff = Matrix::Zero(d, d);
      coeff.col(dec.reactant[k]) = dec.S.col(k).cast<double>();
      m.A.add_term(dec.rates[k], coeff);
      names.push_back(dec.rates[k]);
    }
  };
  first_order(dec.dg, m.dg_symbols);
  first_order(dec.ct, m.ct_symbols);
  first_order(dec.cv, m.cv_symbols);
  for (int k : dec.sb) m.bimolecular_symbols.push_back(dec.rates[k]);
  m.Sb = dec.Sb().cast<double>();
  m.Sct = dec.Sct().cast<double>();
  m.Scv = dec.Scv().cast<double>();
  m.Wct = dec.Wct();
  return m;
}

OpenTest is_open(const StoichiometricDecomposition& dec) {
  const int d = dec.d();
  linopt::LinearProblem lp;
  lp.add_variables(d, "z", 0.0, 1.0);
  for (Eigen::Index k = 0; k < dec.S.cols(); ++k) {
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < d; ++i)
      if (dec.S(i, k) != 0) row.emplace_back(i, dec.S(i, k));
    if (!row.empty()) lp.add_equality(std::move(row), 0.0);
  }
  const auto res = linopt::minimize(lp, -Vector::Ones(d));
  if (!res.feasible()) throw NumericalError("openness LP failed: " + std::string(linopt::to_string(res.status)));
  OpenTest out;
  out.open = res.objective > -1e-9;
  if (!out.open) out.witness = res.x;
  return out;
}

Matrix SignMatrix::to_real() const {
  Matrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = static_cast<double>(static_cast<int>((*this)(i, j)));
  return m;
}

std::string SignMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      switch ((*this)(i, j)) {
        case Sign::Negative: os << '-'; break;
        case Sign::Zero: os << '0'; break;
        case Sign::Positive: os << '+'; break;
      }
    }
  }
  os << ']';
  return os.str();
}

SignMatrix SignMatrix::of(const Matrix& m, double tol) {
  SignMatrix s(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      s(i, j) = m(i, j) > tol ? Sign::Positive : (m(i, j) < -tol ? Sign::Negative : Sign::Zero);
  return s;
}

SignMatrix sign_pattern(const AffineMatrix& m, MixedEntryPolicy policy, std::vector<std::pair<int, int>>* mixed) {
  SignMatrix s(m.rows(), m.cols());
  std::vector<std::pair<int, int>> bad;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const auto [c, terms] = m.entry(i, j);
      bool pos = c > 0.0;
      bool neg = c < 0.0;
      for (const auto& [k, coeff] : terms) {
        pos = pos || coeff > 0.0;
        neg = neg || coeff < 0.0;
      }
      if (pos && neg) {
        bad.emplace_back(i, j);
        s(i, j) = Sign::Negative;
      } else if (pos) {
        s(i, j) = Sign::Positive;
      } else if (neg) {
        s(i, j) = Sign::Negative;
      }
    }
  }
  if (mixed) *mixed = bad;
  if (!bad.empty() && policy == MixedEntryPolicy::Reject) throw SignPatternError(bad);
  return s;
}

IntervalMatrix interval_bounds(const AffineMatrix& m, const std::map<std::string, Domain>& domains) {
  std::vector<const Domain*> dom;
  for (const auto& sym : m.symbols()) {
    auto it = domains.find(sym);
    if (it == domains.end()) throw PreconditionError("no domain for symbol '" + sym + "'");
    if (!it->second.bounded())
      throw PreconditionError("interval bounds need a bounded domain for '" + sym + "' (declared > 0)");
    dom.push_back(&it->second);
  }
  IntervalMatrix out;
  out.lower = m.constant();
  out.upper = m.constant();
  std::set<std::string> open_symbols;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const auto [c, terms] = m.entry(i, j);
      bool lower_open = false;
      bool upper_open = false;
      for (const auto& [k, coeff] : terms) {
        const Domain& dm = *dom[k];
        if (coeff > 0) {
          out.lower(i, j) += coeff * dm.lower();
          out.upper(i, j) += coeff * dm.upper();
          if (!dm.lo_closed) lower_open = true, open_symbols.insert(m.symbols()[k]);
          if (!dm.hi_closed) upper_open = true, open_symbols.insert(m.symbols()[k]);
        } else {
          out.lower(i, j) += coeff * dm.upper();
          out.upper(i, j) += coeff * dm.lower();
          if (!dm.hi_closed) lower_open = true, open_symbols.insert(m.symbols()[k]);
          if (!dm.lo_closed) upper_open = true, open_symbols.insert(m.symbols()[k]);
        }
      }
      if (lower_open) out.lower_not_attained.emplace_back(i, j);
      if (upper_open) out.upper_not_attained.emplace_back(i, j);
    }
  }
  for (const auto& [i, j] : out.lower_not_attained) {
    std::ostringstream os;
    os << "lower bound of entry (" << i + 1 << "," << j + 1 << ") = " << out.lower(i, j)
       << " sits on an open endpoint and is not attained";
    out.warnings.push_back(os.str());
  }
  for (const auto& [i, j] : out.upper_not_attained) {
    std::ostringstream os;
    os << "upper bound of entry (" << i + 1 << "," << j + 1 << ") = " << out.upper(i, j)
       << " sits on an open endpoint and is not attained";
    out.warnings.push_back(os.str());
  }
  return out;
}

}  // namespace ergocert::model
