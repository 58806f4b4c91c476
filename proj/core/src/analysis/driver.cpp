#include "internal.hpp"

#include "ergocert/error.hpp"
#include "ergocert/hash.hpp"

#include <regex>
#include <sstream>

namespace ergocert::analysis {

using namespace detail;

Problem Problem::from(model::ReactionNetwork net) {
  Problem p;
  p.dec = model::decompose(net);
  p.cm = model::characteristic_model(p.dec);
  p.hash = sha256_hex(model::to_source(net));
  p.net = std::move(net);
  return p;
}

std::map<std::string, double> Problem::nominal_values() const {
  std::map<std::string, double> out;
  auto need = [&](const std::vector<std::string>& syms) {
    for (const auto& s : syms) {
      const auto& dom = net.domain(s);
      const bool point = dom.kind == model::Domain::Kind::Fixed ||
                         (dom.kind == model::Domain::Kind::Interval && dom.lo == dom.hi);
      if (!point)
        throw PreconditionError("nominal framework needs fixed rates; '" + s + "' is declared " + dom.to_string());
      out[s] = dom.lo;
    }
  };
  need(cm.zeroth_symbols);
  need(cm.dg_symbols);
  need(cm.ct_symbols);
  need(cm.cv_symbols);
  return out;
}

Matrix Problem::nominal_A() const { return cm.A.evaluate(nominal_values()); }

Vector Problem::nominal_b0() const { return cm.b0.evaluate(nominal_values()).col(0); }

namespace {

void require_open(const Problem& p) {
  const auto t = model::is_open(p.dec);
  if (t.open) return;
  std::ostringstream os;
  os << "network is not open: the combination";
  for (Eigen::Index i = 0; i < t.witness.size(); ++i)
    if (t.witness[i] > 1e-9) os << " " << t.witness[i] << "*" << p.dec.species[i];
  os << " is conserved by every reaction";
  throw PreconditionError(os.str());
}

// "#k" placeholders from the pattern-level routines become species names
std::string name_species(const std::string& s, const std::vector<std::string>& names) {
  static const std::regex placeholder("#([0-9]+)");
  std::string out;
  auto it = std::sregex_iterator(s.begin(), s.end(), placeholder);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out += s.substr(last, m.position() - last);
    const int k = std::stoi(m[1].str()) - 1;
    out += k >= 0 && k < static_cast<int>(names.size()) ? names[k] : m.str();
    last = m.position() + m.length();
  }
  return out + s.substr(last);
}

Certificate finish(Certificate c, const Problem& p, const AnalysisOptions& opts) {
  c.network_hash = p.hash;
  c.irreducible_asserted = opts.assert_irreducible;
  c.counterexample = name_species(c.counterexample, p.cm.species);
  for (auto& cv : c.caveats) cv = name_species(cv, p.cm.species);
  if (!opts.assert_irreducible && c.property == Property::AIC && c.holds()) c.caveats.push_back(kIrreducibleCaveat);
  return c;
}

model::IntervalMatrix interval_A(const Problem& p) { return model::interval_bounds(p.cm.A, p.net.domains); }

std::optional<Vector> b0_upper(const Problem& p) {
  for (const auto& s : p.cm.zeroth_symbols)
    if (!p.net.domain(s).bounded()) return std::nullopt;
  if (p.cm.zeroth_symbols.empty()) return Vector::Zero(p.cm.d());
  return Vector(model::interval_bounds(p.cm.b0, p.net.domains).upper.col(0));
}

void conversion_caveat(Certificate& c, const Problem& p) {
  if (model::has_conversion(p.dec) && c.verdict == Verdict::Fails)
    c.caveats.push_back("conversion reactions couple entries of A; this framework treats them independently, "
                        "so the failure may be an artefact of that relaxation");
}

Certificate bimolecular_ergodicity(const Problem& p, Framework f, const AnalysisOptions& opts) {
  const auto& lp = opts.robust.lp;
  switch (f) {
    case Framework::Nominal:
      return ergodicity_bimolecular_nominal(p.nominal_A(), p.cm.Sb, lp);
    case Framework::Interval: {
      const auto iv = interval_A(p);
      Certificate c = ergodicity_interval_bimolecular(iv, p.cm.Sb, lp);
      if (c.verdict != Verdict::Unknown) return c;
      const auto red = reduce_bimolecular(p.cm);
      if (!red.exact) return c;
      const auto ivr = model::interval_bounds(red.reduced, p.net.domains);
      c.matrices["reduced A+"] = ivr.upper;
      if (!linopt::is_hurwitz_metzler(ivr.upper, lp).hurwitz) {
        std::ostringstream os;
        os.precision(10);
        os << "reduced matrix P A+ is not Hurwitz (Perron-Frobenius eigenvalue " << linopt::pf_eigenvalue(ivr.upper)
           << ")";
        c.verdict = Verdict::Fails;
        c.counterexample = os.str();
        c.caveats.push_back("refutes the sufficient condition on the reduced system; "
                            "non-ergodicity itself is not shown");
      }
      return c;
    }
    case Framework::Robust:
      return ergodicity_robust_bimolecular(reduce_to_cv(p.cm, p.net.domains), opts.robust);
    case Framework::Sign: {
      const auto red = reduce_bimolecular(p.cm);
      if (!red.exact) {
        Certificate c = make(Framework::Sign, Property::ErgodicityBimolecular);
        c.verdict = Verdict::Unknown;
        c.caveats.push_back("no exact reduction of the bimolecular part; the sign test does not apply");
        return c;
      }
      Certificate c = ergodicity_sign(model::sign_pattern(red.reduced, model::MixedEntryPolicy::Reject), lp);
      c.property = Property::ErgodicityBimolecular;
      c.matrices["Sb"] = p.cm.Sb;
      c.matrices["Sb_perp"] = red.perp;
      c.matrices["sgn(P A)"] = c.matrices["sgn(A)"];
      c.matrices.erase("sgn(A)");
      if (c.holds()) {
        c.v_aux = c.v;
        c.v = red.perp.transpose() * *c.v_aux;
      }
      // cycle nodes are groups of species in the reduced system
      if (!c.counterexample.empty()) {
        std::vector<std::string> groups;
        for (Eigen::Index a = 0; a < red.perp.rows(); ++a) {
          std::string g;
          for (Eigen::Index i = 0; i < red.perp.cols(); ++i)
            if (red.perp(a, i) != 0.0) g += (g.empty() ? "" : "+") + p.cm.species[i];
          groups.push_back(g);
        }
        c.counterexample = "reduced system: " + name_species(c.counterexample, groups);
      }
      return c;
    }
    case Framework::Structural:
      return ergodicity_structural_bimolecular(p.cm, lp);
  }
  throw PreconditionError("unknown framework");
}

}  // namespace

Certificate ergodicity(const Problem& p, Framework f, const AnalysisOptions& opts) {
  require_open(p);
  if (p.cm.bimolecular()) return finish(bimolecular_ergodicity(p, f, opts), p, opts);
  const auto& lp = opts.robust.lp;
  Certificate c;
  switch (f) {
    case Framework::Nominal:
      c = ergodicity_nominal(p.nominal_A(), lp);
      break;
    case Framework::Interval:
      c = ergodicity_interval(interval_A(p), lp);
      conversion_caveat(c, p);
      break;
    case Framework::Robust:
      c = ergodicity_robust(reduce_to_cv(p.cm, p.net.domains), opts.robust);
      break;
    case Framework::Sign:
      c = ergodicity_sign(model::sign_pattern(p.cm.A, model::MixedEntryPolicy::Reject), lp);
      conversion_caveat(c, p);
      break;
    case Framework::Structural:
      c = ergodicity_structural(p.cm, lp);
      break;
  }
  return finish(std::move(c), p, opts);
}

Certificate output_controllability(const Problem& p, Framework f, const ControlSpec& spec,
                                   const AnalysisOptions& opts) {
  spec.validate(p.cm.d());
  const auto& lp = opts.robust.lp;
  Certificate c;
  switch (f) {
    case Framework::Nominal:
      c = output_controllability(p.nominal_A(), spec, lp);
      break;
    case Framework::Interval:
      c = output_controllability_interval(interval_A(p), spec, lp);
      break;
    case Framework::Robust:
      c = output_controllability_robust(reduce_to_cv(p.cm, p.net.domains), spec, lp);
      break;
    case Framework::Sign: {
      std::vector<std::pair<int, int>> mixed;
      const auto s = model::sign_pattern(p.cm.A, model::MixedEntryPolicy::ResolveNegative, &mixed);
      c = output_controllability_sign(s, spec, lp);
      for (const auto& [i, j] : mixed)
        c.caveats.push_back("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") mixes signs; resolved as negative");
      break;
    }
    case Framework::Structural:
      c = output_controllability_structural(p.cm, spec, lp);
      break;
  }
  if (p.cm.bimolecular()) c.caveats.push_back("computed on the first-order part of the network only");
  return finish(std::move(c), p, opts);
}

Certificate aic(const Problem& p, Framework f, const ControlSpec& spec, const AnalysisOptions& opts) {
  require_open(p);
  spec.validate(p.cm.d());
  if (p.cm.bimolecular()) {
    Certificate c = make(f, Property::AIC);
    c.actuated = spec.actuated;
    c.controlled = spec.controlled;
    c.verdict = Verdict::Unknown;
    c.caveats.push_back("no AIC criterion for networks with bimolecular reactions");
    return finish(std::move(c), p, opts);
  }
  const auto& lp = opts.robust.lp;
  Certificate c;
  switch (f) {
    case Framework::Nominal: {
      const Vector b0 = p.nominal_b0();
      c = aic_nominal(p.nominal_A(), spec, &b0, lp);
      break;
    }
    case Framework::Interval: {
      const auto b0 = b0_upper(p);
      c = aic_interval(interval_A(p), spec, b0 ? &*b0 : nullptr, lp);
      break;
    }
    case Framework::Robust:
      c = aic_robust(reduce_to_cv(p.cm, p.net.domains), spec, opts.robust);
      break;
    case Framework::Sign:
      c = aic_sign(model::sign_pattern(p.cm.A, model::MixedEntryPolicy::Reject), spec, lp);
      break;
    case Framework::Structural:
      c = aic_structural(p.cm, spec, lp);
      break;
  }
  return finish(std::move(c), p, opts);
}

std::vector<Certificate> analyze(const Problem& p, Framework f, const std::optional<ControlSpec>& spec,
                                 const AnalysisOptions& opts) {
  std::vector<Certificate> out{ergodicity(p, f, opts)};
  if (spec) {
    out.push_back(output_controllability(p, f, *spec, opts));
    out.push_back(aic(p, f, *spec, opts));
  }
  return out;
}

}  // namespace ergocert::analysis
