#pragma once

// Dense linear programming and Metzler-matrix stability primitives.
//
// The simplex solver is deliberately small: two-phase tableau method with
// Bland's anti-cycling rule, sized for the desk-scale problems produced by the
// certification frameworks (tens of variables, tens of constraints).

#include <Eigen/Dense>

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ergocert::linopt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Sparse constraint row: sum_k coeff_k * x[index_k] (<= | ==) rhs.
struct Row {
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
};

/// Linear feasibility / optimization problem over named real variables.
class LinearProblem {
 public:
  /// Adds one variable with bounds lo <= x <= hi (either may be infinite).
  int add_variable(std::string name, double lo = 0.0, double hi = kInf);
  /// Adds `count` variables named prefix[0..count). Returns the first index.
  int add_variables(int count, const std::string& prefix, double lo = 0.0, double hi = kInf);

  void add_equality(std::vector<std::pair<int, double>> terms, double rhs);
  void add_inequality(std::vector<std::pair<int, double>> terms, double rhs);  // row . x <= rhs

  void set_bounds(int var, double lo, double hi);

  int num_variables() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Row>& equalities() const { return equalities_; }
  const std::vector<Row>& inequalities() const { return inequalities_; }
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }

  /// Largest violation of any constraint or bound by x, relative to the row scale.
  std::pair<double, double> residuals(const Vector& x) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Row> equalities_;
  std::vector<Row> inequalities_;
};

enum class Status { Feasible, Infeasible, Unbounded, Numerical };

const char* to_string(Status s);

struct FeasibilityResult {
  Status status = Status::Numerical;
  Vector x;                           // witness (Feasible only)
  double equality_residual = 0.0;     // max scaled |row.x - rhs|
  double inequality_residual = 0.0;   // max scaled (row.x - rhs)_+ including bounds
  double objective = 0.0;
  int iterations = 0;

  bool feasible() const { return status == Status::Feasible; }
};

struct SolverOptions {
  double pivot_tol = 1e-12;
  double feas_tol = 1e-9;
  int max_iterations = 200000;
  std::ostream* trace = nullptr;  // tableau dump per pivot when set
};

/// Phase-I simplex. Feasible results carry a witness meeting feas_tol.
FeasibilityResult solve_feasibility(const LinearProblem& problem, const SolverOptions& options = {});

/// Two-phase simplex minimizing cost . x. Feasible means an optimum was found.
FeasibilityResult minimize(const LinearProblem& problem, const Vector& cost,
                           const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// Metzler-matrix primitives

bool is_metzler(const Matrix& m, double tol = 0.0);

/// Result of the LP Hurwitz test: when `hurwitz`, v > 0 satisfies v^T M <= -1.
struct HurwitzTest {
  bool hurwitz = false;
  Vector v;
  FeasibilityResult lp;
};

/// Decides Hurwitz stability of a Metzler matrix through the LP
/// {v >= 1, M^T v <= -1}. Throws PreconditionError for non-Metzler input.
HurwitzTest is_hurwitz_metzler(const Matrix& m, const SolverOptions& options = {});

/// Independent Hurwitz test for Metzler matrices: -M is a nonsingular M-matrix
/// iff Gaussian elimination without pivoting produces only positive pivots.
bool hurwitz_by_pivots(const Matrix& m);

/// Perron-Frobenius (dominant, real) eigenvalue of a Metzler matrix, by
/// bisection on s such that M - sI is Hurwitz. Absolute tolerance `tol`.
double pf_eigenvalue(const Matrix& m, double tol = 1e-10);

/// Inverse by Gaussian elimination with partial pivoting. Throws
/// NumericalError when a pivot falls below `pivot_tol` relative to |M|.
Matrix inverse(const Matrix& m, double pivot_tol = 1e-12);

/// For a Metzler Hurwitz M, checks M^{-1} <= 1e-10 entrywise.
bool inverse_nonpositive(const Matrix& m, Matrix* inverse_out = nullptr);

}  // namespace ergocert::linopt
