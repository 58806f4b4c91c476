#include "internal.hpp"

#include "ergocert/error.hpp"

namespace ergocert::analysis {

using namespace detail;

namespace {

Matrix real_pattern(const model::SignMatrix& s) {
  if (s.rows() != s.cols()) throw PreconditionError("sign pattern must be square");
  const Matrix S = s.to_real();
  if (!linopt::is_metzler(S)) throw PreconditionError("sign pattern has a negative off-diagonal entry");
  return S;
}

// diagonal entry that is not strictly negative, or -1
int bad_diagonal(const Matrix& S) {
  for (Eigen::Index i = 0; i < S.rows(); ++i)
    if (S(i, i) >= 0.0) return static_cast<int>(i);
  return -1;
}

}  // namespace

Certificate ergodicity_sign(const model::SignMatrix& s, const linopt::SolverOptions& opts) {
  const Matrix S = real_pattern(s);
  Certificate c = make(Framework::Sign, Property::Ergodicity);
  c.matrices["sgn(A)"] = S;
  c.notes["pattern"] = s.to_string();

  const auto h = linopt::is_hurwitz_metzler(S, opts);
  const int diag = bad_diagonal(S);
  const auto cycle = find_cycle(S);
  const bool combinatorial = diag < 0 && cycle.empty();

  if (h.hurwitz && combinatorial) {
    c.verdict = Verdict::Holds;
    c.v = h.v;
    return c;
  }
  if (h.hurwitz != combinatorial) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back(std::string("criteria disagree: LP on sgn(A) ") + (h.hurwitz ? "holds" : "fails") +
                        ", diagonal/cycle test " + (combinatorial ? "holds" : "fails"));
    return c;
  }
  c.verdict = Verdict::Fails;
  if (diag >= 0)
    c.counterexample = "diagonal entry of " + species_name(nullptr, diag) + " is not negative";
  else
    c.counterexample = "cycle " + format_cycle(cycle, nullptr) + " in the sign pattern";
  return c;
}

Certificate output_controllability_sign(const model::SignMatrix& s, const ControlSpec& spec,
                                        const linopt::SolverOptions& opts) {
  const Matrix S = real_pattern(s);
  spec.validate(static_cast<int>(S.rows()));
  Certificate c = make(Framework::Sign, Property::OutputControllability);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  c.matrices["sgn(A)"] = S;
  c.notes["pattern"] = s.to_string();
  apply_oc(c, oc_core(S, spec.actuated, spec.controlled, opts));
  return c;
}

Certificate aic_sign(const model::SignMatrix& s, const ControlSpec& spec, const linopt::SolverOptions& opts) {
  const Matrix S = real_pattern(s);
  spec.validate(static_cast<int>(S.rows()));
  Certificate c = make(Framework::Sign, Property::AIC);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  c.matrices["sgn(A)"] = S;
  c.notes["pattern"] = s.to_string();
  if (auto jw = aic_lp(S, S, 0.0, spec.actuated, spec.controlled, opts)) {
    c.verdict = Verdict::Holds;
    c.v = jw->v;
    c.w = jw->w;
    c.mu_shift = 0.0;
    return c;
  }
  const Certificate erg = ergodicity_sign(s, opts);
  const auto oc = oc_core(S, spec.actuated, spec.controlled, opts);
  if (erg.holds() && oc.holds) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("joint LP infeasible although both sub-properties hold; numerical trouble suspected");
    return c;
  }
  c.verdict = Verdict::Fails;
  std::string why = erg.holds() ? "" : erg.counterexample;
  if (!oc.holds)
    why += std::string(why.empty() ? "" : "; ") + "no path from " + species_name(nullptr, spec.actuated) + " to " +
           species_name(nullptr, spec.controlled) + " in the interaction graph";
  c.counterexample = why;
  return c;
}

}  // namespace ergocert::analysis
