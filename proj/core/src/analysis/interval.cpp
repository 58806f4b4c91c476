#include "internal.hpp"

#include "ergocert/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace ergocert::analysis {

using namespace detail;

namespace {

void check(const model::IntervalMatrix& iv) {
  if (!linopt::is_metzler(iv.upper) || !linopt::is_metzler(iv.lower))
    throw PreconditionError("interval bounds are not Metzler");
  if (((iv.upper - iv.lower).array() < 0.0).any()) throw PreconditionError("interval bounds are not ordered");
}

void attach(Certificate& c, const model::IntervalMatrix& iv) {
  c.matrices["A+"] = iv.upper;
  c.matrices["A-"] = iv.lower;
}

std::string unstable(const Matrix& M) {
  std::ostringstream os;
  os.precision(10);
  os << "A+ is not Hurwitz (Perron-Frobenius eigenvalue " << linopt::pf_eigenvalue(M) << ")";
  return os.str();
}

}  // namespace

Certificate ergodicity_interval(const model::IntervalMatrix& iv, const linopt::SolverOptions& opts) {
  check(iv);
  Certificate c = make(Framework::Interval, Property::Ergodicity);
  attach(c, iv);
  const auto h = linopt::is_hurwitz_metzler(iv.upper, opts);
  if (h.hurwitz) {
    c.verdict = Verdict::Holds;
    c.v = h.v;
  } else {
    c.verdict = Verdict::Fails;
    c.counterexample = unstable(iv.upper);
    if (!iv.upper_not_attained.empty())
      c.caveats.push_back("some entries of A+ sit on open endpoints; the failure concerns the closure of the family");
  }
  return c;
}

Certificate ergodicity_interval_bimolecular(const model::IntervalMatrix& iv, const Matrix& Sb,
                                            const linopt::SolverOptions& opts) {
  if (Sb.cols() == 0) return ergodicity_interval(iv, opts);
  check(iv);
  Certificate c = make(Framework::Interval, Property::ErgodicityBimolecular);
  attach(c, iv);
  c.matrices["Sb"] = Sb;
  if (auto v = stability_witness(iv.upper, Sb, opts)) {
    c.verdict = Verdict::Holds;
    c.v = *v;
  } else {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("no v > 0 with v^T Sb = 0 and v^T A+ < 0; the condition is only sufficient");
  }
  return c;
}

Certificate output_controllability_interval(const model::IntervalMatrix& iv, const ControlSpec& spec,
                                            const linopt::SolverOptions& opts) {
  check(iv);
  spec.validate(static_cast<int>(iv.lower.rows()));
  Certificate c = make(Framework::Interval, Property::OutputControllability);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  attach(c, iv);
  apply_oc(c, oc_core(iv.lower, spec.actuated, spec.controlled, opts));
  for (const auto& w : iv.warnings)
    if (w.rfind("lower", 0) == 0) c.caveats.push_back(w);
  return c;
}

SetpointBound setpoint_bound_interval(const model::IntervalMatrix& iv, const Vector& b0_upper, int controlled) {
  const int d = static_cast<int>(iv.upper.rows());
  const Matrix width = iv.upper - iv.lower;
  std::vector<std::pair<int, int>> free;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (width(i, j) > 0.0) free.emplace_back(i, j);

  std::vector<std::vector<double>> fractions;
  const int m = static_cast<int>(free.size());
  if (m <= 8) {
    fractions = grid(std::vector<poly::Interval>(m, poly::Interval{0.0, 1.0}), 3);
  } else {
    std::mt19937_64 rng(0x1a7e);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    fractions.push_back(std::vector<double>(m, 0.0));
    fractions.push_back(std::vector<double>(m, 1.0));
    for (int s = 0; s < 2000; ++s) {
      std::vector<double> f(m);
      for (auto& x : f) x = u(rng) < 0.3 ? std::round(u(rng)) : u(rng);
      fractions.push_back(std::move(f));
    }
  }

  double alpha = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& f : fractions) {
    Matrix M = iv.upper;
    for (int k = 0; k < m; ++k) M(free[k].first, free[k].second) -= f[k] * width(free[k].first, free[k].second);
    const Matrix inv = linopt::inverse(M);
    const Vector r = -inv.colwise().sum().transpose();  // r^T = -1^T M^{-1}
    if (r.minCoeff() <= 0.0) throw NumericalError("interval member has a non-negative inverse column");
    alpha = std::min(alpha, 1.0 / r.maxCoeff());
    worst = std::max(worst, r.dot(b0_upper) / r[controlled]);
  }
  SetpointBound out;
  out.alpha = alpha;
  out.bound = worst / alpha;
  const Matrix inv = linopt::inverse(iv.upper);
  out.v = -inv.colwise().sum().transpose();  // q = 1 witness at Delta = 0
  return out;
}

Certificate aic_interval(const model::IntervalMatrix& iv, const ControlSpec& spec, const Vector* b0_upper,
                         const linopt::SolverOptions& opts) {
  check(iv);
  spec.validate(static_cast<int>(iv.lower.rows()));
  Certificate c = make(Framework::Interval, Property::AIC);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  attach(c, iv);
  if (auto jw = aic_lp(iv.upper, iv.lower, 0.0, spec.actuated, spec.controlled, opts)) {
    c.verdict = Verdict::Holds;
    c.v = jw->v;
    c.w = jw->w;
    c.mu_shift = 0.0;
    if (b0_upper) {
      const auto sb = setpoint_bound_interval(iv, *b0_upper, spec.controlled);
      c.alpha = sb.alpha;
      c.setpoint_bound = sb.bound;
      c.caveats.push_back("set-point bound maximised over a finite grid of the interval family with q = 1; "
                          "it is conservative and not claimed exact");
    } else {
      c.caveats.push_back("no finite set-point bound: a zeroth-order rate is unbounded");
    }
    return c;
  }
  const bool stable = linopt::is_hurwitz_metzler(iv.upper, opts).hurwitz;
  const auto oc = oc_core(iv.lower, spec.actuated, spec.controlled, opts);
  if (stable && oc.holds) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("joint LP infeasible although both sub-properties hold; numerical trouble suspected");
    return c;
  }
  c.verdict = Verdict::Fails;
  std::string why;
  if (!stable) why = unstable(iv.upper);
  if (!oc.holds) why += std::string(why.empty() ? "" : "; ") + "A- is not output controllable from input to output";
  c.counterexample = why;
  return c;
}

}  // namespace ergocert::analysis
