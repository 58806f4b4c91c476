#pragma once

// Sparse multivariate polynomials over a small, named variable set, with
// symbolic determinants/adjugates of affine matrices and a branch-and-bound
// positivity check over boxes.

#include "ergocert/model.hpp"

#include <Eigen/Dense>

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ergocert::poly {

using Exponent = std::vector<int>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly constant(std::vector<std::string> variables, double c);
  static MultiPoly variable(std::vector<std::string> variables, int index);

  const std::vector<std::string>& variables() const { return variables_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  const std::map<Exponent, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  double coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, double c);
  /// Drops terms with |c| <= tol * max|c|.
  void prune(double relative_tol);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(double s) const;
  MultiPoly& operator+=(const MultiPoly& o);

  double evaluate(std::span<const double> x) const;
  /// Natural interval extension of the expanded form.
  Interval evaluate(std::span<const Interval> box) const;
  MultiPoly derivative(int var) const;

  /// Terms in graded-lex order (highest degree first), e.g. "2*a*b - a + 3".
  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  std::vector<std::string> variables_;
  std::map<Exponent, double> terms_;
};

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

inline constexpr int kMaxSymbolicDim = 8;
inline constexpr int kMaxSymbolicVars = 8;

/// Entries of an affine matrix as polynomials in its symbols.
PolyMatrix to_poly_matrix(const model::AffineMatrix& m);
Eigen::MatrixXd evaluate(const PolyMatrix& m, std::span<const double> x);

/// Exact expansion of det(M(rho)); variables are m.symbols().
MultiPoly det_poly(const model::AffineMatrix& m);
MultiPoly det_poly(const PolyMatrix& m);
/// Adj(M(rho)) with Adj(M) M = det(M) I.
PolyMatrix adjugate_poly(const model::AffineMatrix& m);

enum class Positivity { Positive, CounterexampleFound, Unknown };
const char* to_string(Positivity p);

struct PositivityOptions {
  long max_subdivisions = 100000;
  int grid_points = 20000;  // total budget for the initial grid scan
};

struct PositivityResult {
  Positivity status = Positivity::Unknown;
  std::vector<double> point;     // counterexample (value <= 0) or grid minimizer
  double value = 0.0;            // p(point)
  double certified_lower = 0.0;  // min lower bound over the final partition
  long subdivisions = 0;
};

/// Decides p > 0 on the closed box. Counterexamples come from a grid scan, local
/// descent, and sub-box centres; Positive is certified by interval bounds.
PositivityResult box_positivity(const MultiPoly& p, const std::vector<Interval>& box,
                                const PositivityOptions& options = {});

}  // namespace ergocert::poly
