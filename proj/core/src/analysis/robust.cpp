#include "internal.hpp"

#include "ergocert/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ergocert::analysis {

using namespace detail;

Matrix RobustFamily::upper_at(const std::vector<double>& point) const { return upper.evaluate(point); }
Matrix RobustFamily::lower_at(const std::vector<double>& point) const { return lower.evaluate(point); }

std::vector<double> RobustFamily::midpoint() const {
  std::vector<double> m(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) m[i] = 0.5 * (box[i].lo + box[i].hi);
  return m;
}

RobustFamily reduce_to_cv(const model::CharacteristicModel& cm, const std::map<std::string, model::Domain>& domains) {
  auto domain_of = [&](const std::string& s) -> const model::Domain& {
    auto it = domains.find(s);
    if (it == domains.end()) throw PreconditionError("no domain for rate '" + s + "'");
    if (!it->second.bounded())
      throw PreconditionError("robust framework needs bounded domains; '" + s + "' is " + it->second.to_string());
    return it->second;
  };

  RobustFamily fam;
  std::map<std::string, double> worst_stab, worst_ctrl;
  auto note_open = [&](const std::string& s, const model::Domain& dom, bool at_lo, const char* side) {
    if (dom.kind != model::Domain::Kind::Interval) return;
    if (at_lo ? !dom.lo_closed : !dom.hi_closed)
      fam.warnings.push_back(std::string(side) + ": " + (at_lo ? "lower" : "upper") + " bound of '" + s +
                             "' sits on an open endpoint and is not attained");
  };
  for (const auto& s : cm.dg_symbols) {
    const auto& dom = domain_of(s);
    worst_stab[s] = dom.lower();
    worst_ctrl[s] = dom.upper();
    note_open(s, dom, true, "A+");
    note_open(s, dom, false, "A-");
  }
  for (const auto& s : cm.ct_symbols) {
    const auto& dom = domain_of(s);
    worst_stab[s] = dom.upper();
    worst_ctrl[s] = dom.lower();
    note_open(s, dom, false, "A+");
    note_open(s, dom, true, "A-");
  }
  fam.upper = cm.A.substitute(worst_stab);
  fam.lower = cm.A.substitute(worst_ctrl);
  fam.cv = fam.upper.symbols();
  if (fam.cv != fam.lower.symbols()) throw NumericalError("robust family: symbol lists differ");
  for (const auto& s : fam.cv) {
    const auto& dom = domain_of(s);
    fam.box.push_back({dom.lower(), dom.upper()});
  }

  bool bounded = true;
  std::map<std::string, double> b0_hi;
  for (const auto& s : cm.zeroth_symbols) {
    auto it = domains.find(s);
    if (it == domains.end() || !it->second.bounded()) {
      bounded = false;
      break;
    }
    b0_hi[s] = it->second.upper();
  }
  if (bounded) fam.b0_upper = Vector(cm.b0.evaluate(b0_hi).col(0));
  fam.Sb = cm.Sb;
  return fam;
}

std::vector<poly::MultiPoly> adjugate_witness(const model::AffineMatrix& family) {
  const int d = family.rows();
  const poly::PolyMatrix adj = poly::adjugate_poly(family);
  const double sign = (d + 1) % 2 == 0 ? 1.0 : -1.0;
  std::vector<poly::MultiPoly> v;
  v.reserve(d);
  for (int j = 0; j < d; ++j) {
    poly::MultiPoly s(family.symbols());
    for (int i = 0; i < d; ++i) s += adj[i][j];
    s = s * sign;
    s.prune(1e-14);
    v.push_back(std::move(s));
  }
  return v;
}

namespace {

Vector eval_witness(const std::vector<poly::MultiPoly>& v, const std::vector<double>& pt) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].evaluate(pt);
  return out;
}

bool strict_witness(const Vector& v, const Matrix& M) {
  if (v.minCoeff() <= 0.0) return false;
  const Vector r = M.transpose() * v;
  return r.maxCoeff() < 0.0;
}

std::string unstable_at(const RobustFamily& fam, const std::vector<double>& pt, const std::string& what) {
  return what + " at " + format_point(fam.cv, pt);
}

// Grid points over the cv box, coarsened so that at most ~3000 points are visited.
std::vector<std::vector<double>> robust_grid(const std::vector<poly::Interval>& box, int per_dim) {
  int free = 0;
  for (const auto& b : box) free += b.hi > b.lo ? 1 : 0;
  int k = std::max(per_dim, 2);
  while (k > 2 && std::pow(static_cast<double>(k), free) > 3000.0) --k;
  return grid(box, k);
}

// Hurwitz test at a point plus determinant positivity over the box. Holds attaches the
// adjugate witness checked at seeded samples.
Certificate det_route(const RobustFamily& fam, const model::AffineMatrix& upper, Property prop,
                      const RobustOptions& opts) {
  Certificate c = make(Framework::Robust, prop);
  c.sample_symbols = fam.cv;
  const int d = upper.rows();
  const auto mid = fam.midpoint();
  c.matrices["A+(mid)"] = upper.evaluate(mid);

  if (fam.cv.empty()) {
    const auto h = linopt::is_hurwitz_metzler(c.matrices["A+(mid)"], opts.lp);
    if (h.hurwitz) {
      c.verdict = Verdict::Holds;
      c.v = h.v;
    } else {
      c.verdict = Verdict::Fails;
      c.counterexample = "A+ is not Hurwitz";
    }
    return c;
  }

  const auto h = linopt::is_hurwitz_metzler(c.matrices["A+(mid)"], opts.lp);
  if (!h.hurwitz) {
    c.verdict = Verdict::Fails;
    c.counterexample = unstable_at(fam, mid, "A+ is not Hurwitz");
    c.counterexample_point = mid;
    return c;
  }
  c.v = h.v;

  poly::MultiPoly p;
  std::vector<poly::MultiPoly> vpoly;
  try {
    p = poly::det_poly(upper) * (d % 2 == 0 ? 1.0 : -1.0);
    vpoly = adjugate_witness(upper);
  } catch (const PreconditionError& e) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back(std::string("symbolic determinant unavailable: ") + e.what());
    return c;
  }
  c.notes["det"] = p.to_string();

  const auto pos = poly::box_positivity(p, fam.box, opts.positivity);
  std::ostringstream lower;
  lower.precision(10);
  lower << pos.certified_lower;
  c.notes["det_lower_bound"] = lower.str();
  if (pos.status == poly::Positivity::CounterexampleFound) {
    std::ostringstream os;
    os.precision(10);
    os << "(-1)^d det A+ = " << pos.value << " <= 0 at " << format_point(fam.cv, pos.point);
    c.verdict = Verdict::Fails;
    c.counterexample = os.str();
    c.counterexample_point = pos.point;
    return c;
  }
  if (pos.status == poly::Positivity::Unknown) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("determinant positivity undecided within the subdivision budget");
    return c;
  }

  int degree = 0;
  std::string vs;
  for (const auto& q : vpoly) {
    degree = std::max(degree, q.degree());
    vs += (vs.empty() ? "" : "; ") + q.to_string();
  }
  c.notes["v(rho)"] = vs;
  c.notes["witness_degree"] = std::to_string(degree);

  unsigned long long state = opts.seed;
  std::vector<std::vector<double>> pts{mid};
  for (int s = 0; s < opts.adjugate_samples; ++s) pts.push_back(random_point(fam.box, state));
  for (const auto& pt : pts) {
    const Vector v = eval_witness(vpoly, pt);
    if (!strict_witness(v, upper.evaluate(pt))) {
      c.verdict = Verdict::Unknown;
      c.caveats.push_back("adjugate witness not strictly feasible at " + format_point(fam.cv, pt));
      c.samples.clear();
      return c;
    }
    c.samples.push_back({pt, v});
  }
  c.verdict = Verdict::Holds;
  return c;
}

}  // namespace

Certificate ergodicity_robust(const RobustFamily& family, const RobustOptions& opts) {
  Certificate c = det_route(family, family.upper, Property::Ergodicity, opts);
  for (const auto& w : family.warnings)
    if (w.rfind("A+", 0) == 0) c.caveats.push_back(w);
  return c;
}

Certificate ergodicity_robust_bimolecular(const RobustFamily& family, const RobustOptions& opts) {
  if (family.Sb.cols() == 0) return ergodicity_robust(family, opts);
  const auto red = reduce_affine(family.upper, family.Sb);
  const auto pts = robust_grid(family.box, opts.grid_per_dim);

  Certificate c = make(Framework::Robust, Property::ErgodicityBimolecular);
  c.sample_symbols = family.cv;
  c.matrices["Sb"] = family.Sb;
  c.matrices["Sb_perp"] = red.perp;
  c.notes["reduction"] = red.exact ? "exact" : "partial";

  std::vector<RobustSample> samples;
  std::vector<double> failed;
  for (const auto& pt : pts) {
    if (auto v = stability_witness(family.upper_at(pt), family.Sb, opts.lp)) {
      samples.push_back({pt, *v});
    } else {
      failed = pt;
      break;
    }
  }

  if (red.exact) {
    const int r = static_cast<int>(red.perp.rows());
    if (!failed.empty()) {
      const Matrix R = red.reduced.evaluate(failed);
      if (!linopt::is_hurwitz_metzler(R, opts.lp).hurwitz) {
        c.verdict = Verdict::Fails;
        c.counterexample = unstable_at(family, failed, "reduced matrix P A+ is not Hurwitz");
        c.counterexample_point = failed;
        c.matrices["reduced A+"] = R;
        c.caveats.push_back("refutes the sufficient condition on the reduced system; "
                            "non-ergodicity itself is not shown");
        return c;
      }
      c.verdict = Verdict::Unknown;
      c.caveats.push_back("grid LP infeasible at " + format_point(family.cv, failed));
      return c;
    }
    RobustFamily reduced_family = family;
    reduced_family.upper = red.reduced;
    reduced_family.Sb = Matrix(r, 0);
    Certificate det = det_route(reduced_family, red.reduced, Property::ErgodicityBimolecular, opts);
    c.notes.insert(det.notes.begin(), det.notes.end());
    if (det.verdict != Verdict::Holds) {
      c.verdict = det.verdict == Verdict::Fails ? Verdict::Fails : Verdict::Unknown;
      c.counterexample = det.counterexample;
      c.counterexample_point = det.counterexample_point;
      c.caveats.insert(c.caveats.end(), det.caveats.begin(), det.caveats.end());
      if (c.verdict == Verdict::Fails)
        c.caveats.push_back("refutes the sufficient condition on the reduced system; "
                            "non-ergodicity itself is not shown");
      return c;
    }
    c.verdict = Verdict::Holds;
    c.v_aux = det.v;
    c.v = samples.front().v;
    c.samples = std::move(samples);
    return c;
  }

  if (!failed.empty()) {
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("grid LP infeasible at " + format_point(family.cv, failed) +
                        "; the condition is only sufficient");
    return c;
  }
  c.verdict = Verdict::Holds;
  c.v = samples.front().v;
  c.samples = std::move(samples);
  c.caveats.push_back("checked on a " + std::to_string(c.samples.size()) +
                      "-point grid of the conversion box only; no reduction covers the whole box");
  return c;
}

Certificate output_controllability_robust(const RobustFamily& family, const ControlSpec& spec,
                                          const linopt::SolverOptions& opts) {
  spec.validate(family.lower.rows());
  Certificate c = make(Framework::Robust, Property::OutputControllability);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  c.sample_symbols = family.cv;
  std::vector<double> lo(family.box.size());
  for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = family.box[i].lo;
  const Matrix M = family.lower_at(lo);
  c.matrices["A-"] = M;
  apply_oc(c, oc_core(M, spec.actuated, spec.controlled, opts));
  for (const auto& w : family.warnings)
    if (w.rfind("A-", 0) == 0) c.caveats.push_back(w);
  return c;
}

Certificate aic_robust(const RobustFamily& family, const ControlSpec& spec, const RobustOptions& opts) {
  spec.validate(family.upper.rows());
  const Certificate erg = ergodicity_robust(family, opts);
  const Certificate oc = output_controllability_robust(family, spec, opts.lp);

  Certificate c = make(Framework::Robust, Property::AIC);
  c.actuated = spec.actuated;
  c.controlled = spec.controlled;
  c.sample_symbols = family.cv;
  c.matrices = erg.matrices;
  c.matrices.insert(oc.matrices.begin(), oc.matrices.end());
  c.notes = erg.notes;
  c.caveats = erg.caveats;
  for (const auto& cv : oc.caveats)
    if (std::find(c.caveats.begin(), c.caveats.end(), cv) == c.caveats.end()) c.caveats.push_back(cv);

  if (erg.verdict == Verdict::Fails || oc.verdict == Verdict::Fails) {
    c.verdict = Verdict::Fails;
    c.counterexample = erg.counterexample;
    if (!oc.counterexample.empty())
      c.counterexample += (c.counterexample.empty() ? "" : "; ") + oc.counterexample;
    c.counterexample_point = erg.counterexample_point;
    return c;
  }
  if (erg.verdict != Verdict::Holds || oc.verdict != Verdict::Holds) {
    c.verdict = Verdict::Unknown;
    return c;
  }
  c.verdict = Verdict::Holds;
  c.v = erg.v;
  c.w = oc.w;
  c.mu_shift = oc.mu_shift;
  c.samples = erg.samples;

  if (family.b0_upper) {
    double worst = 0.0;
    double alpha = std::numeric_limits<double>::infinity();
    for (const auto& pt : robust_grid(family.box, opts.grid_per_dim)) {
      const auto sb = setpoint_bound_nominal(family.upper_at(pt), *family.b0_upper, spec.controlled, opts.lp);
      worst = std::max(worst, sb.bound);
      alpha = std::min(alpha, sb.alpha);
    }
    c.setpoint_bound = worst;
    c.alpha = alpha;
    c.caveats.push_back("set-point bound is the largest single-member bound over a grid of the conversion box, "
                        "not a bound certified for the whole family");
    if (spec.mu / spec.theta <= worst) c.caveats.push_back("mu/theta does not exceed the sampled set-point bound");
  } else {
    c.caveats.push_back("no finite set-point bound: a zeroth-order rate is unbounded");
  }
  return c;
}

}  // namespace ergocert::analysis
