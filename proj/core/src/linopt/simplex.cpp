#include "ergocert/linopt.hpp"

#include "ergocert/error.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace ergocert::linopt {

int LinearProblem::add_variable(std::string name, double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi)
    throw PreconditionError("variable '" + name + "' has empty or NaN bounds");
  names_.push_back(std::move(name));
  lower_.push_back(lo);
  upper_.push_back(hi);
  return static_cast<int>(names_.size()) - 1;
}

int LinearProblem::add_variables(int count, const std::string& prefix, double lo, double hi) {
  const int first = num_variables();
  for (int i = 0; i < count; ++i) add_variable(prefix + "[" + std::to_string(i) + "]", lo, hi);
  return first;
}

namespace {

void check_row(const std::vector<std::pair<int, double>>& terms, double rhs, int n) {
  if (!std::isfinite(rhs)) throw PreconditionError("constraint right-hand side is not finite");
  for (const auto& [j, a] : terms) {
    if (j < 0 || j >= n) throw PreconditionError("constraint references an unknown variable");
    if (!std::isfinite(a)) throw PreconditionError("constraint coefficient is not finite");
  }
}

}  // namespace

void LinearProblem::add_equality(std::vector<std::pair<int, double>> terms, double rhs) {
  check_row(terms, rhs, num_variables());
  equalities_.push_back({std::move(terms), rhs});
}

void LinearProblem::add_inequality(std::vector<std::pair<int, double>> terms, double rhs) {
  check_row(terms, rhs, num_variables());
  inequalities_.push_back({std::move(terms), rhs});
}

void LinearProblem::set_bounds(int var, double lo, double hi) {
  if (lo > hi) throw PreconditionError("empty bounds for '" + names_.at(var) + "'");
  lower_.at(var) = lo;
  upper_.at(var) = hi;
}

std::pair<double, double> LinearProblem::residuals(const Vector& x) const {
  auto scaled = [&](const Row& row) {
    double value = 0.0;
    double scale = std::abs(row.rhs);
    for (const auto& [j, a] : row.terms) {
      value += a * x[j];
      scale = std::max(scale, std::abs(a * x[j]));
    }
    return (value - row.rhs) / std::max(1.0, scale);
  };
  double eq = 0.0;
  double in = 0.0;
  for (const auto& row : equalities_) eq = std::max(eq, std::abs(scaled(row)));
  for (const auto& row : inequalities_) in = std::max(in, scaled(row));
  for (int j = 0; j < num_variables(); ++j) {
    const double s = std::max(1.0, std::abs(x[j]));
    if (std::isfinite(lower_[j])) in = std::max(in, (lower_[j] - x[j]) / s);
    if (std::isfinite(upper_[j])) in = std::max(in, (x[j] - upper_[j]) / s);
  }
  return {eq, in};
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Feasible: return "feasible";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::Numerical: return "numerical";
  }
  return "?";
}

namespace {

// Original variable x_j = offset + sign * y[col] (minus y[col2] when free).
struct VarMap {
  int col = -1;
  int col2 = -1;
  double sign = 1.0;
  double offset = 0.0;
};

class Tableau {
 public:
  Tableau(int rows, int cols) : t_(Matrix::Zero(rows, cols + 1)), basis_(rows, -1), cols_(cols) {}

  double& at(int i, int j) { return t_(i, j); }
  double& rhs(int i) { return t_(i, cols_); }
  int rows() const { return static_cast<int>(t_.rows()); }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c, Vector& reduced, double& objective) {
    const double p = t_(r, c);
    t_.row(r) /= p;
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    const double f = reduced[c];
    if (f != 0.0) {
      reduced.head(cols_) -= f * t_.row(r).head(cols_).transpose();
      objective -= f * t_(r, cols_);
    }
    basis_[r] = c;
  }

  void remove_row(int r) {
    const int n = rows() - 1;
    if (r < n) t_.block(r, 0, n - r, t_.cols()) = t_.block(r + 1, 0, n - r, t_.cols()).eval();
    t_.conservativeResize(n, Eigen::NoChange);
    basis_.erase(basis_.begin() + r);
  }

  void dump(std::ostream& os, const Vector& reduced, const char* phase, int iteration) const {
    os << "-- " << phase << " iteration " << iteration << " basis:";
    for (int b : basis_) os << ' ' << b;
    os << "\n" << t_ << "\nreduced: " << reduced.transpose() << "\n";
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
  int cols_;
};

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit };

// Bland's rule: lowest-index improving column, ties in the ratio test broken by
// the lowest basic variable index.
PhaseOutcome run_simplex(Tableau& tab, Vector& reduced, double& objective, int allowed_cols,
                         const SolverOptions& opt, int& iterations, const char* phase) {
  const double opt_tol = 1e-10;
  const double ratio_tol = 1e-9;
  while (true) {
    if (iterations >= opt.max_iterations) return PhaseOutcome::IterationLimit;
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (reduced[j] < -opt_tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return PhaseOutcome::Optimal;
    int leave = -1;
    double best = kInf;
    for (int i = 0; i < tab.rows(); ++i) {
      const double a = tab.at(i, enter);
      if (a <= ratio_tol) continue;
      const double ratio = std::max(0.0, tab.rhs(i)) / a;
      if (ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 && tab.basis()[i] < tab.basis()[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return PhaseOutcome::Unbounded;
    if (std::abs(tab.at(leave, enter)) < opt.pivot_tol) return PhaseOutcome::IterationLimit;
    tab.pivot(leave, enter, reduced, objective);
    ++iterations;
    if (opt.trace) tab.dump(*opt.trace, reduced, phase, iterations);
  }
}

FeasibilityResult solve(const LinearProblem& p, const Vector* cost, const SolverOptions& opt) {
  const int n = p.num_variables();
  if (cost && cost->size() != n) throw PreconditionError("cost vector has the wrong length");

  // Map original variables onto nonnegative columns.
  std::vector<VarMap> map(n);
  int ncols = 0;
  struct UpperRow {
    int col;
    double bound;
  };
  std::vector<UpperRow> upper_rows;
  for (int j = 0; j < n; ++j) {
    const double lo = p.lower(j);
    const double hi = p.upper(j);
    if (std::isfinite(lo)) {
      map[j] = {ncols++, -1, 1.0, lo};
      if (std::isfinite(hi)) upper_rows.push_back({map[j].col, hi - lo});
    } else if (std::isfinite(hi)) {
      map[j] = {ncols++, -1, -1.0, hi};
    } else {
      map[j].col = ncols++;
      map[j].col2 = ncols++;
    }
  }

  struct DenseRow {
    Vector a;
    double b;
    bool inequality;
  };
  std::vector<DenseRow> rows;
  auto densify = [&](const Row& row, bool inequality) {
    DenseRow d{Vector::Zero(ncols), row.rhs, inequality};
    for (const auto& [j, a] : row.terms) {
      const auto& m = map[j];
      d.b -= a * m.offset;
      if (m.col2 >= 0) {
        d.a[m.col] += a;
        d.a[m.col2] -= a;
      } else {
        d.a[m.col] += a * m.sign;
      }
    }
    const double scale = d.a.size() ? d.a.cwiseAbs().maxCoeff() : 0.0;
    if (scale > 0.0) {
      d.a /= scale;
      d.b /= scale;
    }
    return d;
  };
  for (const auto& row : p.equalities()) rows.push_back(densify(row, false));
  for (const auto& row : p.inequalities()) rows.push_back(densify(row, true));
  for (const auto& ur : upper_rows) {
    DenseRow d{Vector::Zero(ncols), ur.bound, true};
    d.a[ur.col] = 1.0;
    rows.push_back(d);
  }

  FeasibilityResult result;
  // Rows with all-zero coefficients are either trivially satisfied or infeasible.
  std::vector<DenseRow> live;
  for (auto& r : rows) {
    if (r.a.size() == 0 || r.a.cwiseAbs().maxCoeff() == 0.0) {
      const bool ok = r.inequality ? r.b >= -opt.feas_tol : std::abs(r.b) <= opt.feas_tol;
      if (!ok) {
        result.status = Status::Infeasible;
        return result;
      }
      continue;
    }
    live.push_back(std::move(r));
  }

  const int m = static_cast<int>(live.size());
  int nslack = 0;
  for (const auto& r : live) nslack += r.inequality ? 1 : 0;
  // Columns: [structural | slacks | artificials].
  std::vector<bool> needs_art(m, false);
  for (int i = 0; i < m; ++i)
    if (!live[i].inequality || live[i].b < 0.0) needs_art[i] = true;
  int nart = 0;
  for (bool b : needs_art) nart += b ? 1 : 0;
  const int slack0 = ncols;
  const int art0 = ncols + nslack;
  const int total = art0 + nart;

  Tableau tab(m, total);
  {
    int s = 0;
    int a = 0;
    for (int i = 0; i < m; ++i) {
      const double sign = live[i].b < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < ncols; ++j) tab.at(i, j) = sign * live[i].a[j];
      tab.rhs(i) = sign * live[i].b;
      int slack_col = -1;
      if (live[i].inequality) {
        slack_col = slack0 + s++;
        tab.at(i, slack_col) = sign;
      }
      if (needs_art[i]) {
        tab.at(i, art0 + a) = 1.0;
        tab.basis()[i] = art0 + a;
        ++a;
      } else {
        tab.basis()[i] = slack_col;
      }
    }
  }

  // Phase I: minimize the sum of artificials.
  Vector reduced = Vector::Zero(total);
  double objective = 0.0;
  for (int j = art0; j < total; ++j) reduced[j] = 1.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] >= art0) {
      for (int j = 0; j < total; ++j) reduced[j] -= tab.at(i, j);
      objective -= tab.rhs(i);
    }
  }
  int iterations = 0;
  auto outcome = run_simplex(tab, reduced, objective, total, opt, iterations, "phase I");
  result.iterations = iterations;
  if (outcome == PhaseOutcome::IterationLimit) {
    result.status = Status::Numerical;
    return result;
  }
  double infeasibility = 0.0;
  for (int i = 0; i < m; ++i)
    if (tab.basis()[i] >= art0) infeasibility += std::max(0.0, tab.rhs(i));
  double rhs_scale = 1.0;
  for (const auto& r : live) rhs_scale = std::max(rhs_scale, std::abs(r.b));
  if (infeasibility > opt.feas_tol * rhs_scale) {
    result.status = Status::Infeasible;
    return result;
  }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (int i = tab.rows() - 1; i >= 0; --i) {
    if (tab.basis()[i] < art0) continue;
    int col = -1;
    double best = 1e-9;
    for (int j = 0; j < art0; ++j) {
      if (std::abs(tab.at(i, j)) > best) {
        best = std::abs(tab.at(i, j));
        col = j;
      }
    }
    if (col >= 0) {
      double dummy = 0.0;
      Vector none = Vector::Zero(total);
      tab.pivot(i, col, none, dummy);
    } else {
      tab.remove_row(i);
    }
  }

  if (cost) {
    Vector c = Vector::Zero(total);
    for (int j = 0; j < n; ++j) {
      const auto& mj = map[j];
      if (mj.col2 >= 0) {
        c[mj.col] += (*cost)[j];
        c[mj.col2] -= (*cost)[j];
      } else {
        c[mj.col] += (*cost)[j] * mj.sign;
      }
    }
    reduced = c;
    objective = 0.0;
    for (int i = 0; i < tab.rows(); ++i) {
      const double cb = c[tab.basis()[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < total; ++j) reduced[j] -= cb * tab.at(i, j);
      objective -= cb * tab.rhs(i);
    }
    for (int j = art0; j < total; ++j) reduced[j] = 0.0;
    outcome = run_simplex(tab, reduced, objective, art0, opt, iterations, "phase II");
    result.iterations = iterations;
    if (outcome == PhaseOutcome::IterationLimit) {
      result.status = Status::Numerical;
      return result;
    }
    if (outcome == PhaseOutcome::Unbounded) {
      result.status = Status::Unbounded;
      return result;
    }
  }

  Vector y = Vector::Zero(total);
  for (int i = 0; i < tab.rows(); ++i) y[tab.basis()[i]] = std::max(0.0, tab.rhs(i));
  Vector x(n);
  for (int j = 0; j < n; ++j) {
    const auto& mj = map[j];
    x[j] = mj.col2 >= 0 ? y[mj.col] - y[mj.col2] : mj.offset + mj.sign * y[mj.col];
  }
  const auto [eq, in] = p.residuals(x);
  result.x = x;
  result.equality_residual = eq;
  result.inequality_residual = in;
  result.objective = cost ? cost->dot(x) : 0.0;
  result.status = (eq <= opt.feas_tol && in <= opt.feas_tol) ? Status::Feasible
                                                                         : Status::Numerical;
  return result;
}

}  // namespace

FeasibilityResult solve_feasibility(const LinearProblem& problem, const SolverOptions& options) {
  return solve(problem, nullptr, options);
}

FeasibilityResult minimize(const LinearProblem& problem, const Vector& cost,
                           const SolverOptions& options) {
  return solve(problem, &cost, options);
}

}  // namespace ergocert::linopt
