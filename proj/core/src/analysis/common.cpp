#include "internal.hpp"

#include "ergocert/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ergocert::analysis {

const char* to_string(Framework f) {
  switch (f) {
    case Framework::Nominal: return "nominal";
    case Framework::Interval: return "interval";
    case Framework::Robust: return "robust";
    case Framework::Sign: return "sign";
    case Framework::Structural: return "structural";
  }
  return "?";
}

const char* to_string(Property p) {
  switch (p) {
    case Property::Ergodicity: return "ergodicity";
    case Property::ErgodicityBimolecular: return "ergodicity-bimolecular";
    case Property::OutputControllability: return "output-controllability";
    case Property::AIC: return "aic";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Framework parse_framework(std::string_view s) {
  for (Framework f : kAllFrameworks)
    if (s == to_string(f)) return f;
  throw PreconditionError("unknown framework '" + std::string(s) + "'");
}

Property parse_property(std::string_view s) {
  for (Property p : {Property::Ergodicity, Property::ErgodicityBimolecular, Property::OutputControllability,
                     Property::AIC})
    if (s == to_string(p)) return p;
  throw PreconditionError("unknown property '" + std::string(s) + "'");
}

Verdict parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::Holds, Verdict::Fails, Verdict::Unknown})
    if (s == to_string(v)) return v;
  throw PreconditionError("unknown verdict '" + std::string(s) + "'");
}

void ControlSpec::validate(int d) const {
  if (actuated < 0 || actuated >= d) throw PreconditionError("actuated species index out of range");
  if (controlled < 0 || controlled >= d) throw PreconditionError("controlled species index out of range");
  for (double r : {mu, theta, eta, k})
    if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("controller rates mu, theta, eta, k must be positive");
}

namespace detail {

Certificate make(Framework f, Property p) {
  Certificate c;
  c.framework = f;
  c.property = p;
  return c;
}

std::optional<Vector> stability_witness(const Matrix& M, const Matrix& E, const linopt::SolverOptions& opts) {
  const int d = static_cast<int>(M.rows());
  linopt::LinearProblem lp;
  lp.add_variables(d, "v", 1.0, linopt::kInf);
  for (int j = 0; j < d; ++j) {
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < d; ++i)
      if (M(i, j) != 0.0) row.emplace_back(i, M(i, j));
    lp.add_inequality(std::move(row), -1.0);
  }
  for (Eigen::Index j = 0; j < E.cols(); ++j) {
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < d; ++i)
      if (E(i, j) != 0.0) row.emplace_back(i, E(i, j));
    if (!row.empty()) lp.add_equality(std::move(row), 0.0);
  }
  auto res = linopt::solve_feasibility(lp, opts);
  if (res.status == linopt::Status::Numerical) throw NumericalError("stability LP ended with numerical trouble");
  if (!res.feasible()) return std::nullopt;
  return res.x;
}

OcCore oc_core(const Matrix& M, int input, int output, const linopt::SolverOptions& opts) {
  if (!linopt::is_metzler(M)) throw PreconditionError("output controllability test needs a Metzler matrix");
  const int d = static_cast<int>(M.rows());
  if (input < 0 || input >= d || output < 0 || output >= d) throw PreconditionError("species index out of range");
  OcCore out;
  const bool hurwitz = linopt::is_hurwitz_metzler(M, opts).hurwitz;
  out.mu = hurwitz ? 0.0 : linopt::pf_eigenvalue(M) + 1.0;
  const Matrix shifted = M - out.mu * Matrix::Identity(d, d);
  const Matrix inv = linopt::inverse(shifted);
  out.w = -inv.row(output).transpose();
  const double scale = std::max(1.0, out.w.cwiseAbs().maxCoeff());
  for (int i = 0; i < d; ++i)
    if (out.w[i] < 0.0 && out.w[i] >= -1e-10 * scale) out.w[i] = 0.0;
  out.holds = out.w.minCoeff() >= 0.0 && out.w[input] > 1e-10 * scale;
  out.rank_row = oc_rank_row(M, input, output);
  out.graph = graph_path(M, input, output);
  return out;
}

std::string species_name(const std::vector<std::string>* names, int i) {
  if (names && i >= 0 && i < static_cast<int>(names->size())) return (*names)[i];
  return "#" + std::to_string(i + 1);
}

void apply_oc(Certificate& c, const OcCore& core, const std::vector<std::string>* names) {
  c.w = core.w;
  c.mu_shift = core.mu;
  c.verdict = core.holds ? Verdict::Holds : Verdict::Fails;
  if (core.holds != core.graph || core.holds != core.rank_row) {
    c.caveats.push_back(std::string("criteria disagree: linear solve ") + (core.holds ? "holds" : "fails") +
                        ", rank row " + (core.rank_row ? "holds" : "fails") + ", graph path " +
                        (core.graph ? "holds" : "fails"));
    c.verdict = Verdict::Unknown;
  }
  if (c.verdict == Verdict::Fails)
    c.counterexample = "no path from " + species_name(names, c.actuated) + " to " + species_name(names, c.controlled) +
                       " in the interaction graph";
  c.notes["rank_row"] = core.rank_row ? "true" : "false";
  c.notes["graph_path"] = core.graph ? "true" : "false";
}

std::optional<JointWitness> aic_lp(const Matrix& Ms, const Matrix& Mc, double mu, int input, int output,
                                   const linopt::SolverOptions& opts) {
  const int d = static_cast<int>(Ms.rows());
  linopt::LinearProblem lp;
  const int v0 = lp.add_variables(d, "v", 1.0, linopt::kInf);
  const int w0 = lp.add_variables(d, "w", 0.0, linopt::kInf);
  const int t = lp.add_variable("t", 1.0, linopt::kInf);
  lp.set_bounds(w0 + input, 1.0, linopt::kInf);
  const Matrix shifted = Mc - mu * Matrix::Identity(d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<std::pair<int, double>> stab, ctrl;
    for (int i = 0; i < d; ++i) {
      if (Ms(i, j) != 0.0) stab.emplace_back(v0 + i, Ms(i, j));
      if (shifted(i, j) != 0.0) ctrl.emplace_back(w0 + i, shifted(i, j));
    }
    if (j == output) ctrl.emplace_back(t, 1.0);
    lp.add_inequality(std::move(stab), -1.0);
    lp.add_equality(std::move(ctrl), 0.0);
  }
  auto res = linopt::solve_feasibility(lp, opts);
  if (res.status == linopt::Status::Numerical) throw NumericalError("AIC LP ended with numerical trouble");
  if (!res.feasible()) return std::nullopt;
  JointWitness jw;
  jw.v = res.x.segment(v0, d);
  jw.w = res.x.segment(w0, d) / res.x[t];
  return jw;
}

std::string format_cycle(const std::vector<int>& cycle, const std::vector<std::string>* names) {
  std::string s;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) s += " -> ";
    s += species_name(names, cycle[i]);
  }
  return s;
}

std::string format_point(const std::vector<std::string>& symbols, const std::vector<double>& point) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) os << ", ";
    os << (i < symbols.size() ? symbols[i] : "?") << " = " << point[i];
  }
  return os.str();
}

std::vector<std::vector<double>> grid(const std::vector<poly::Interval>& box, int per_dim) {
  std::vector<std::vector<double>> axes;
  for (const auto& b : box) {
    std::vector<double> ax;
    if (b.hi > b.lo && per_dim > 1) {
      for (int i = 0; i < per_dim; ++i) ax.push_back(b.lo + (b.hi - b.lo) * i / (per_dim - 1));
    } else {
      ax.push_back(0.5 * (b.lo + b.hi));
    }
    axes.push_back(std::move(ax));
  }
  std::vector<std::vector<double>> out{{}};
  for (const auto& ax : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& p : out)
      for (double x : ax) {
        auto q = p;
        q.push_back(x);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail
}  // namespace ergocert::analysis
