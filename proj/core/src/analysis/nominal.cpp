#include "internal.hpp"

#include "ergocert/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ergocert::analysis {

using namespace detail;

namespace {

std::string not_hurwitz(const std::string& name, const Matrix& M) {
  std::ostringstream os;
  os.precision(10);
  os << name << " is not Hurwitz (Perron-Frobenius eigenvalue " << linopt::pf_eigenvalue(M) << ")";
  return os.str();
}

}  // namespace

Certificate ergodicity_nominal(const Matrix& A, const linopt::SolverOptions& opts) {
  Certificate c = make(Framework::Nominal, Property::Ergodicity);
  c.matrices["A"] = A;
  const auto h = linopt::is_hurwitz_metzler(A, opts);
  if (h.hurwitz) {
    c.verdict = Verdict::Holds;
    c.v = h.v;
  } else {
    c.verdict = Verdict::Fails;
    c.counterexample = not_hurwitz("A", A);
  }
  return c;
}

Certificate ergodicity_bimolecular_nominal(const Matrix& A, const Matrix& Sb, const linopt::SolverOptions& opts) {
  if (Sb.cols() == 0) return ergodicity_nominal(A, opts);
  if (!linopt::is_metzler(A)) throw PreconditionError("characteristic matrix is not Metzler");
  Certificate c = make(Framework::Nominal, Property::ErgodicityBimolecular);
  c.matrices["A"] = A;
  c.matrices["Sb"] = Sb;
  if (auto v = stability_witness(A, Sb, opts)) {
    c.verdict = Verdict::Holds;
    c.v = *v;
  } else {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("no v > 0 with v^T Sb = 0 and v^T A < 0; the condition is only sufficient");
  }
  return c;
}

bool oc_rank_row(const Matrix& M, int input, int output) {
  const Eigen::Index d = M.rows();
  // Krylov space is shift invariant; the shifted matrix is nonnegative so no cancellation.
  const Matrix N = M - std::min(0.0, M.diagonal().minCoeff()) * Matrix::Identity(d, d);
  Vector x = Vector::Unit(d, input);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (x[output] > 0.0) return true;
    x = N * x;
    const double s = x.maxCoeff();
    if (s <= 0.0) return false;
    x /= s;
  }
  return false;
}

Certificate output_controllability(const Matrix& A, int input, int output, const linopt::SolverOptions& opts) {
  Certificate c = make(Framework::Nominal, Property::OutputControllability);
  c.actuated = input;
  c.controlled = output;
  c.matrices["A"] = A;
  apply_oc(c, oc_core(A, input, output, opts));
  return c;
}

Certificate output_controllability(const Matrix& A, const ControlSpec& spec, const linopt::SolverOptions& opts) {
  spec.validate(static_cast<int>(A.rows()));
  return output_controllability(A, spec.actuated, spec.controlled, opts);
}

SetpointBound setpoint_bound_nominal(const Matrix& A, const Vector& b0, int controlled,
                                     const linopt::SolverOptions& opts) {
  const int d = static_cast<int>(A.rows());
  if (b0.size() != d) throw PreconditionError("offset vector has wrong length");
  if (controlled < 0 || controlled >= d) throw PreconditionError("controlled species index out of range");
  const auto h = linopt::is_hurwitz_metzler(A, opts);
  if (!h.hurwitz) throw PreconditionError("set-point bound needs a Hurwitz characteristic matrix");
  const double lambda = linopt::pf_eigenvalue(A);

  SetpointBound best;
  best.bound = std::numeric_limits<double>::infinity();
  if (b0.isZero(0.0)) return {0.0, -lambda / 2.0, Vector::Ones(d)};
  // alpha = half the stability margin; v minimises v^T b0 with v_l = 1, halving alpha on LP failure
  for (double alpha = -lambda / 2.0; alpha > -lambda * 1e-3 && !std::isfinite(best.bound); alpha /= 2.0) {
    linopt::LinearProblem lp;
    lp.add_variables(d, "v", 1e-6, linopt::kInf);
    lp.set_bounds(controlled, 1.0, 1.0);
    for (int j = 0; j < d; ++j) {
      std::vector<std::pair<int, double>> row;
      for (int i = 0; i < d; ++i) {
        const double a = A(i, j) + (i == j ? alpha : 0.0);
        if (a != 0.0) row.emplace_back(i, a);
      }
      lp.add_inequality(std::move(row), 0.0);
    }
    const auto res = linopt::minimize(lp, b0, opts);
    if (!res.feasible() || res.x.minCoeff() <= 0.0) continue;
    best = {b0.dot(res.x) / (alpha * res.x[controlled]), alpha, res.x};
  }
  if (!std::isfinite(best.bound)) throw NumericalError("no set-point bound could be certified");
  return best;
}

Certificate aic_nominal(const Matrix& A, const ControlSpec& spec, const Vector* b0, const linopt::SolverOptions& opts) {
  spec.validate(static_cast<int>(A.rows()));
  if (!linopt::is_metzler(A)) throw PreconditionError("characteristic matrix is not Metzler");
  Certificate c = make(Framework::Nominal, Property::AIC);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  c.matrices["A"] = A;
  if (auto jw = aic_lp(A, A, 0.0, spec.actuated, spec.controlled, opts)) {
    c.verdict = Verdict::Holds;
    c.v = jw->v;
    c.w = jw->w;
    c.mu_shift = 0.0;
    if (b0) {
      const auto sb = setpoint_bound_nominal(A, *b0, spec.controlled, opts);
      c.alpha = sb.alpha;
      c.setpoint_bound = sb.bound;
      c.notes["setpoint_v"] = "minimises v^T b0 over v^T (A + alpha I) <= 0";
      if (spec.mu / spec.theta <= sb.bound)
        c.caveats.push_back("mu/theta does not exceed the sufficient set-point bound");
    }
    return c;
  }
  const bool stable = linopt::is_hurwitz_metzler(A, opts).hurwitz;
  const auto oc = oc_core(A, spec.actuated, spec.controlled, opts);
  if (stable && oc.holds) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("joint LP infeasible although both sub-properties hold; numerical trouble suspected");
    return c;
  }
  c.verdict = Verdict::Fails;
  std::string why;
  if (!stable) why = not_hurwitz("A", A);
  if (!oc.holds) why += std::string(why.empty() ? "" : "; ") + "not output controllable from input to output";
  c.counterexample = why;
  return c;
}

}  // namespace ergocert::analysis
