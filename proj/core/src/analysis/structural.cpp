#include "internal.hpp"

#include "ergocert/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ergocert::analysis {

using namespace detail;

namespace {

constexpr double kLogGrid[] = {1e-2, 1e-1, 1.0, 1e1, 1e2};

bool conversion_hypothesis(const model::CharacteristicModel& cm) {
  for (Eigen::Index j = 0; j < cm.Scv.cols(); ++j) {
    int plus = 0, minus = 0, other = 0;
    for (Eigen::Index i = 0; i < cm.Scv.rows(); ++i) {
      const double x = cm.Scv(i, j);
      if (x == 1.0)
        ++plus;
      else if (x == -1.0)
        ++minus;
      else if (x != 0.0)
        ++other;
    }
    if (plus != 1 || minus != 1 || other != 0) return false;
  }
  return true;
}

// first-order rates at 1 except catalytic ones at 0
Matrix a_one(const model::CharacteristicModel& cm) {
  return cm.A.evaluate([&](const std::string& s) {
    return std::find(cm.ct_symbols.begin(), cm.ct_symbols.end(), s) != cm.ct_symbols.end() ? 0.0 : 1.0;
  });
}

Matrix zero_one(const Matrix& N) {
  return (N.array() != 0.0).cast<double>().matrix();
}

std::string catalytic_loop(const model::CharacteristicModel& cm, const std::vector<int>& cycle) {
  std::string s;
  for (std::size_t i = 0; i < cycle.size(); ++i) s += (i ? " -> " : "") + cm.ct_symbols[cycle[i]];
  return s;
}

// Sampled points (log grid, or seeded log-uniform draws when the grid is too large).
std::vector<std::vector<double>> log_samples(int vars) {
  std::vector<std::vector<double>> pts;
  if (std::pow(5.0, vars) <= 3125.0) {
    std::vector<poly::Interval> box(vars, {0.0, 4.0});
    for (auto idx : grid(box, 5)) {
      for (auto& x : idx) x = kLogGrid[static_cast<int>(std::lround(x))];
      pts.push_back(std::move(idx));
    }
    return pts;
  }
  unsigned long long state = 0x57a7;
  const std::vector<poly::Interval> box(vars, {-2.0, 2.0});
  for (int s = 0; s < 3000; ++s) {
    auto x = random_point(box, state);
    for (auto& e : x) e = std::pow(10.0, e);
    pts.push_back(std::move(x));
  }
  return pts;
}

bool nonnegative_coefficients(const poly::MultiPoly& p) {
  if (p.is_zero()) return false;
  for (const auto& [e, c] : p.terms())
    if (c < 0.0) return false;
  return true;
}

// Ergodicity when the conversion hypothesis fails: a determinant with nonnegative
// coefficients plus one Hurwitz member settles it; otherwise sample for a refutation.
Certificate structural_fallback(const model::AffineMatrix& A, Property prop, bool refutes,
                                const linopt::SolverOptions& opts) {
  Certificate c = make(Framework::Structural, prop);
  c.notes["method"] = "determinant";
  c.sample_symbols = A.symbols();
  const std::vector<double> ones(A.symbols().size(), 1.0);
  const Matrix A1 = A.evaluate(ones);
  c.matrices["A(1)"] = A1;
  const auto h = linopt::is_hurwitz_metzler(A1, opts);
  if (!h.hurwitz) {
    c.verdict = refutes ? Verdict::Fails : Verdict::Unknown;
    c.counterexample = refutes ? "A is not Hurwitz at all rates equal to 1" : "";
    c.counterexample_point = ones;
    if (!refutes) c.caveats.push_back("A is not Hurwitz at all rates equal to 1");
    return c;
  }
  try {
    const int d = A.rows();
    const poly::MultiPoly p = poly::det_poly(A) * (d % 2 == 0 ? 1.0 : -1.0);
    c.notes["det"] = p.to_string();
    if (nonnegative_coefficients(p)) {
      c.verdict = Verdict::Holds;
      c.v = h.v;
      c.caveats.push_back("conversion columns are not all of the form e_j - e_i; stability for all rates follows "
                          "from the nonnegative coefficients of (-1)^d det A and one Hurwitz member");
      return c;
    }
  } catch (const PreconditionError& e) {
    c.caveats.push_back(std::string("symbolic determinant unavailable: ") + e.what());
  }
  for (const auto& pt : log_samples(static_cast<int>(A.symbols().size()))) {
    const Matrix M = A.evaluate(pt);
    if (!linopt::is_hurwitz_metzler(M, opts).hurwitz) {
      c.verdict = refutes ? Verdict::Fails : Verdict::Unknown;
      const std::string msg = "A is not Hurwitz at " + format_point(c.sample_symbols, pt);
      if (refutes) {
        c.counterexample = msg;
        c.counterexample_point = pt;
      } else {
        c.caveats.push_back(msg);
      }
      return c;
    }
  }
  c.verdict = Verdict::Unknown;
  c.caveats.push_back("no unstable member found on a log-spaced sample of the rates; stability for all rates "
                      "is not certified");
  return c;
}

}  // namespace

StructuralTests structural_tests(const model::CharacteristicModel& cm, const linopt::SolverOptions& opts) {
  StructuralTests t;
  t.hypothesis = conversion_hypothesis(cm);
  t.A1 = a_one(cm);
  const auto h = linopt::is_hurwitz_metzler(t.A1, opts);
  t.a1_hurwitz = h.hurwitz;
  if (!h.hurwitz) return t;
  t.v_c = h.v;

  const int nct = static_cast<int>(cm.ct_symbols.size());
  if (nct == 0) {
    t.N = Matrix(0, 0);
    t.f_holds = t.g_holds = true;
    t.v_d = Vector(0);
    return t;
  }
  t.N = -cm.Wct * linopt::inverse(t.A1) * cm.Sct;
  const double scale = std::max(1.0, t.N.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < t.N.rows(); ++i)
    for (Eigen::Index j = 0; j < t.N.cols(); ++j)
      if (std::abs(t.N(i, j)) <= 1e-12 * scale) t.N(i, j) = 0.0;
  if (t.N.minCoeff() < 0.0) throw NumericalError("W_ct A_1^{-1} S_ct has a positive entry");

  for (int a = 0; a < nct; ++a)
    if (t.N(a, a) > 0.0) t.catalytic_cycle = {a, a};
  if (t.catalytic_cycle.empty()) t.catalytic_cycle = find_cycle(t.N);
  t.f_holds = t.catalytic_cycle.empty();

  const Matrix G = zero_one(t.N) - Matrix::Identity(nct, nct);
  if (auto v = stability_witness(G, Matrix(nct, 0), opts)) {
    t.g_holds = true;
    t.v_d = *v;
  }
  return t;
}

Certificate ergodicity_structural(const model::CharacteristicModel& cm, const linopt::SolverOptions& opts) {
  if (cm.bimolecular()) return ergodicity_structural_bimolecular(cm, opts);
  const auto t = structural_tests(cm, opts);
  if (!t.hypothesis) return structural_fallback(cm.A, Property::Ergodicity, true, opts);

  Certificate c = make(Framework::Structural, Property::Ergodicity);
  c.notes["method"] = "catalytic";
  c.matrices["A_1"] = t.A1;
  if (!t.a1_hurwitz) {
    c.verdict = Verdict::Fails;
    c.counterexample = "A(dg = 1, cv = 1, ct = 0) is not Hurwitz";
    return c;
  }
  c.matrices["N"] = t.N;
  c.matrices["sgn(N) - I"] = zero_one(t.N) - Matrix::Identity(t.N.rows(), t.N.cols());
  if (t.f_holds != t.g_holds) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back(std::string("criteria disagree: nilpotency test ") + (t.f_holds ? "holds" : "fails") +
                        ", LP on sgn(N) - I " + (t.g_holds ? "holds" : "fails"));
    return c;
  }
  if (t.f_holds) {
    c.verdict = Verdict::Holds;
    c.v = t.v_c;
    c.v_aux = t.v_d;
    return c;
  }
  c.verdict = Verdict::Fails;
  c.counterexample = "catalytic loop " + catalytic_loop(cm, t.catalytic_cycle) +
                     ": W_ct A_1^{-1} S_ct has nonzero spectral radius";
  return c;
}

Certificate output_controllability_structural(const model::CharacteristicModel& cm, const ControlSpec& spec,
                                              const linopt::SolverOptions& opts) {
  spec.validate(cm.d());
  std::vector<std::pair<int, int>> mixed;
  const auto s = model::sign_pattern(cm.A, model::MixedEntryPolicy::ResolveNegative, &mixed);
  const Matrix S = s.to_real();
  Certificate c = make(Framework::Structural, Property::OutputControllability);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  c.matrices["sgn(A)"] = S;
  c.notes["pattern"] = s.to_string();
  apply_oc(c, oc_core(S, spec.actuated, spec.controlled, opts), &cm.species);
  for (const auto& [i, j] : mixed)
    c.caveats.push_back("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") mixes signs; treated as generically nonzero");
  return c;
}

Certificate aic_structural(const model::CharacteristicModel& cm, const ControlSpec& spec,
                           const linopt::SolverOptions& opts) {
  spec.validate(cm.d());
  Certificate c = make(Framework::Structural, Property::AIC);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  if (cm.bimolecular()) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("no AIC criterion for networks with bimolecular reactions");
    return c;
  }
  const Certificate oc = output_controllability_structural(cm, spec, opts);
  c.caveats = oc.caveats;
  c.matrices = oc.matrices;
  const auto t = structural_tests(cm, opts);

  if (!t.hypothesis) {
    const Certificate erg = structural_fallback(cm.A, Property::Ergodicity, true, opts);
    c.matrices.insert(erg.matrices.begin(), erg.matrices.end());
    c.caveats.insert(c.caveats.end(), erg.caveats.begin(), erg.caveats.end());
    c.notes["method"] = "determinant";
    if (erg.verdict == Verdict::Fails || oc.verdict == Verdict::Fails) {
      c.verdict = Verdict::Fails;
      c.counterexample = erg.counterexample;
      if (!oc.counterexample.empty())
        c.counterexample += (c.counterexample.empty() ? "" : "; ") + oc.counterexample;
      c.counterexample_point = erg.counterexample_point;
    } else if (erg.holds() && oc.holds()) {
      c.verdict = Verdict::Holds;
      c.v = erg.v;
      c.w = oc.w;
      c.mu_shift = oc.mu_shift;
    } else {
      c.verdict = Verdict::Unknown;
    }
    return c;
  }

  c.notes["method"] = "catalytic";
  c.matrices["A_1"] = t.A1;
  if (!t.a1_hurwitz) {
    c.verdict = Verdict::Fails;
    c.counterexample = "A(dg = 1, cv = 1, ct = 0) is not Hurwitz";
    if (!oc.holds() && oc.verdict == Verdict::Fails) c.counterexample += "; " + oc.counterexample;
    return c;
  }
  const int d = cm.d();
  const int nct = static_cast<int>(t.N.rows());
  const Matrix G = zero_one(t.N) - Matrix::Identity(nct, nct);
  const Matrix S = oc.matrices.at("sgn(A)");
  const double mu = oc.mu_shift.value_or(0.0);
  c.matrices["N"] = t.N;
  c.matrices["sgn(N) - I"] = G;

  linopt::LinearProblem lp;
  const int vc = lp.add_variables(d, "v_c", 1.0, linopt::kInf);
  const int vd = lp.add_variables(nct, "v_d", 1.0, linopt::kInf);
  const int w0 = lp.add_variables(d, "w", 0.0, linopt::kInf);
  const int tt = lp.add_variable("t", 1.0, linopt::kInf);
  lp.set_bounds(w0 + spec.actuated, 1.0, linopt::kInf);
  const Matrix shifted = S - mu * Matrix::Identity(d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<std::pair<int, double>> stab, ctrl;
    for (int i = 0; i < d; ++i) {
      if (t.A1(i, j) != 0.0) stab.emplace_back(vc + i, t.A1(i, j));
      if (shifted(i, j) != 0.0) ctrl.emplace_back(w0 + i, shifted(i, j));
    }
    if (j == spec.controlled) ctrl.emplace_back(tt, 1.0);
    lp.add_inequality(std::move(stab), -1.0);
    lp.add_equality(std::move(ctrl), 0.0);
  }
  for (int j = 0; j < nct; ++j) {
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < nct; ++i)
      if (G(i, j) != 0.0) row.emplace_back(vd + i, G(i, j));
    lp.add_inequality(std::move(row), -1.0);
  }
  const auto res = linopt::solve_feasibility(lp, opts);
  if (res.status == linopt::Status::Numerical) throw NumericalError("structural AIC LP ended with numerical trouble");
  if (res.feasible()) {
    c.verdict = Verdict::Holds;
    c.v = res.x.segment(vc, d);
    c.v_aux = res.x.segment(vd, nct);
    c.w = res.x.segment(w0, d) / res.x[tt];
    c.mu_shift = mu;
    return c;
  }
  if (t.f_holds && oc.holds()) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("joint LP infeasible although both sub-properties hold; numerical trouble suspected");
    return c;
  }
  c.verdict = Verdict::Fails;
  std::string why;
  if (!t.f_holds)
    why = "catalytic loop " + catalytic_loop(cm, t.catalytic_cycle) + ": W_ct A_1^{-1} S_ct has nonzero spectral radius";
  if (oc.verdict == Verdict::Fails) why += (why.empty() ? "" : "; ") + oc.counterexample;
  c.counterexample = why;
  return c;
}

Certificate ergodicity_structural_bimolecular(const model::CharacteristicModel& cm,
                                              const linopt::SolverOptions& opts) {
  if (!cm.bimolecular()) return ergodicity_structural(cm, opts);
  Certificate c = make(Framework::Structural, Property::ErgodicityBimolecular);
  const Matrix P = left_annihilator(cm.Sb);
  const int d = cm.d();
  const int r = static_cast<int>(P.rows());
  const auto& A = cm.A;
  const int K = static_cast<int>(A.symbols().size());
  c.matrices["Sb"] = cm.Sb;
  c.matrices["Sb_perp"] = P;

  // constant witness v = P^T v~: every symbol contributes a nonpositive term to each
  // column of v^T A and the terms of one column add up to at most -1
  linopt::LinearProblem lp;
  const int v0 = lp.add_variables(r, "v~", -linopt::kInf, linopt::kInf);
  for (int i = 0; i < d; ++i) {
    std::vector<std::pair<int, double>> row;
    for (int a = 0; a < r; ++a)
      if (P(a, i) != 0.0) row.emplace_back(v0 + a, -P(a, i));
    lp.add_inequality(std::move(row), -1.0);
  }
  std::vector<Matrix> PM;
  for (int k = 0; k < K; ++k) PM.push_back(P * A.coefficient(k));
  const Matrix PC = P * A.constant();
  for (int j = 0; j < d; ++j) {
    std::map<int, double> total;
    auto add = [&](const Matrix& M, std::map<int, double>& acc) {
      for (int a = 0; a < r; ++a)
        if (M(a, j) != 0.0) acc[v0 + a] += M(a, j);
    };
    for (int k = 0; k < K; ++k) {
      std::map<int, double> term;
      add(PM[k], term);
      add(PM[k], total);
      if (!term.empty()) lp.add_inequality({term.begin(), term.end()}, 0.0);
    }
    std::map<int, double> constant;
    add(PC, constant);
    if (!constant.empty()) lp.add_inequality({constant.begin(), constant.end()}, 0.0);
    lp.add_inequality({total.begin(), total.end()}, -1.0);
  }
  const auto res = linopt::solve_feasibility(lp, opts);
  if (res.status == linopt::Status::Numerical) throw NumericalError("bimolecular witness LP ended with numerical trouble");
  if (res.feasible()) {
    c.verdict = Verdict::Holds;
    c.notes["method"] = "constant-witness";
    c.v_aux = res.x.segment(v0, r);
    c.v = P.transpose() * *c.v_aux;
    return c;
  }

  const auto red = reduce_affine(A, cm.Sb);
  c.notes["reduction"] = red.exact ? "exact" : "partial";
  if (!red.exact) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("no constant witness and no exact reduction of the bimolecular part");
    return c;
  }
  Certificate sub = structural_fallback(red.reduced, Property::ErgodicityBimolecular, true, opts);
  c.notes.insert(sub.notes.begin(), sub.notes.end());
  c.caveats = sub.caveats;
  c.sample_symbols = sub.sample_symbols;
  c.matrices["reduced A(1)"] = sub.matrices["A(1)"];
  if (sub.verdict == Verdict::Holds) {
    c.verdict = Verdict::Holds;
    c.notes["method"] = "reduced-determinant";
    c.v_aux = sub.v;
    c.v = P.transpose() * *sub.v;
    c.matrices["A(1)"] = A.evaluate(std::vector<double>(K, 1.0));
    return c;
  }
  c.verdict = sub.verdict;
  c.counterexample = sub.counterexample.empty() ? "" : "reduced system: " + sub.counterexample;
  c.counterexample_point = sub.counterexample_point;
  if (c.verdict == Verdict::Fails)
    c.caveats.push_back("refutes the sufficient condition on the reduced system; non-ergodicity itself is not shown");
  return c;
}

}  // namespace ergocert::analysis
