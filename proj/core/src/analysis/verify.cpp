#include "internal.hpp"

#include "ergocert/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ergocert::analysis {

using namespace detail;

namespace {

struct Check {
  bool ok = true;
  double residual = 0.0;
  std::string message;

  void fail(const std::string& why) {
    if (ok) message = why;
    ok = false;
  }
  void worst(double r) { residual = std::max(residual, r); }
};

double inf_norm(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// LP-normalised stability witness: v >= 1 and M^T v <= -1, up to tol relative to |v|
void lp_witness(Check& ck, const std::optional<Vector>& v, const Matrix& M, double tol, const std::string& what) {
  if (!v) return ck.fail(what + ": witness missing");
  if (v->size() != M.rows()) return ck.fail(what + ": witness has wrong dimension");
  const double scale = std::max(1.0, inf_norm(*v));
  double r = 0.0;
  for (Eigen::Index i = 0; i < v->size(); ++i) r = std::max(r, 1.0 - (*v)[i]);
  if (M.rows() > 0) {
    const Vector g = M.transpose() * *v;
    for (Eigen::Index j = 0; j < g.size(); ++j) r = std::max(r, g[j] + 1.0);
  }
  r /= scale;
  ck.worst(r);
  if (r >= tol) ck.fail(what + ": v^T M <= -1, v >= 1 violated by " + std::to_string(r));
}

// unnormalised witness: v > 0 and v^T M < 0
void strict_witness(Check& ck, const Vector& v, const Matrix& M, const std::string& what) {
  if (v.size() != M.rows()) return ck.fail(what + ": witness has wrong dimension");
  if (v.minCoeff() <= 0.0) return ck.fail(what + ": witness is not positive");
  const Vector g = M.transpose() * v;
  if (g.maxCoeff() >= 0.0) ck.fail(what + ": v^T M is not negative");
}

void kernel(Check& ck, const Vector& v, const Matrix& Sb, double tol, const std::string& what) {
  if (Sb.cols() == 0) return;
  const double r = inf_norm(Sb.transpose() * v) / std::max(1.0, inf_norm(v));
  ck.worst(r);
  if (r >= tol) ck.fail(what + ": v^T Sb != 0");
}

void oc_witness(Check& ck, const Certificate& c, const Matrix& M, double tol) {
  if (!c.w) return ck.fail("controllability witness missing");
  const Vector& w = *c.w;
  const int d = static_cast<int>(M.rows());
  if (w.size() != d) return ck.fail("controllability witness has wrong dimension");
  if (c.actuated < 0 || c.actuated >= d || c.controlled < 0 || c.controlled >= d)
    return ck.fail("control indices out of range");
  const double mu = c.mu_shift.value_or(0.0);
  const Vector res = (M - mu * Matrix::Identity(d, d)).transpose() * w + Vector::Unit(d, c.controlled);
  const double r = inf_norm(res) / std::max(1.0, inf_norm(w));
  ck.worst(r);
  if (r >= tol) ck.fail("w^T (M - mu I) + e_out^T != 0");
  if (w.minCoeff() < -1e-10 * std::max(1.0, inf_norm(w))) ck.fail("controllability witness has a negative entry");
  if (!(w[c.actuated] > 0.0)) ck.fail("controllability witness vanishes at the actuated species");
  if (mu != 0.0 && !linopt::hurwitz_by_pivots(M - mu * Matrix::Identity(d, d)))
    ck.fail("shifted matrix M - mu I is not Hurwitz");
}

Matrix a_one(const model::CharacteristicModel& cm) {
  return cm.A.evaluate([&](const std::string& s) {
    return std::find(cm.ct_symbols.begin(), cm.ct_symbols.end(), s) != cm.ct_symbols.end() ? 0.0 : 1.0;
  });
}

Matrix pattern(const model::CharacteristicModel& cm) {
  return model::sign_pattern(cm.A, model::MixedEntryPolicy::ResolveNegative).to_real();
}

bool in_box(const std::vector<double>& pt, const std::vector<poly::Interval>& box) {
  if (pt.size() != box.size()) return false;
  for (std::size_t i = 0; i < pt.size(); ++i)
    if (pt[i] < box[i].lo || pt[i] > box[i].hi) return false;
  return true;
}

void robust_samples(Check& ck, const Certificate& c, const RobustFamily& fam, double tol, bool bimolecular) {
  if (fam.cv.empty() && !bimolecular) return lp_witness(ck, c.v, fam.upper.constant(), tol, "A+");
  if (c.samples.empty()) return ck.fail("robust certificate has no samples");
  if (c.sample_symbols != fam.cv) return ck.fail("sample symbols do not match the conversion rates");
  for (const auto& s : c.samples) {
    if (!in_box(s.point, fam.box)) return ck.fail("sample point outside the domain box");
    const Matrix M = fam.upper_at(s.point);
    strict_witness(ck, s.v, M, "A+ at " + format_point(fam.cv, s.point));
    if (bimolecular) kernel(ck, s.v, fam.Sb, tol, "sample");
    if (!ck.ok) return;
  }
}

void structural_stability(Check& ck, const Certificate& c, const model::CharacteristicModel& cm, double tol) {
  const std::string method = c.notes.count("method") ? c.notes.at("method") : "";
  if (method == "catalytic") {
    const Matrix A1 = a_one(cm);
    lp_witness(ck, c.v, A1, tol, "A_1");
    if (!ck.ok) return;
    const int nct = static_cast<int>(cm.ct_symbols.size());
    Matrix N = nct ? Matrix(-cm.Wct * linopt::inverse(A1) * cm.Sct) : Matrix(0, 0);
    const double scale = std::max(1.0, N.size() ? N.cwiseAbs().maxCoeff() : 0.0);
    const Matrix G = (N.array().abs() > 1e-12 * scale).cast<double>().matrix() - Matrix::Identity(nct, nct);
    lp_witness(ck, c.v_aux, G, tol, "sgn(N) - I");
  } else if (method == "determinant") {
    const Matrix M = cm.A.evaluate(std::vector<double>(cm.A.symbols().size(), 1.0));
    lp_witness(ck, c.v, M, tol, "A(1)");
    if (!ck.ok) return;
    const int d = cm.d();
    const poly::MultiPoly p = poly::det_poly(cm.A) * (d % 2 == 0 ? 1.0 : -1.0);
    if (p.is_zero()) return ck.fail("determinant polynomial vanishes");
    for (const auto& [e, coeff] : p.terms())
      if (coeff < 0.0) return ck.fail("determinant polynomial has a negative coefficient");
  } else {
    ck.fail("unknown structural method '" + method + "'");
  }
}

void structural_bimolecular(Check& ck, const Certificate& c, const model::CharacteristicModel& cm, double tol) {
  if (!c.v) return ck.fail("witness missing");
  const Vector& v = *c.v;
  if (v.size() != cm.d()) return ck.fail("witness has wrong dimension");
  kernel(ck, v, cm.Sb, tol, "v");
  const std::string method = c.notes.count("method") ? c.notes.at("method") : "";
  const double scale = std::max(1.0, inf_norm(v));
  if (method == "constant-witness") {
    double r = std::max(0.0, 1.0 - v.minCoeff());
    Vector total = Vector::Zero(cm.d());
    for (std::size_t k = 0; k < cm.A.symbols().size(); ++k) {
      const Vector g = cm.A.coefficient(k).transpose() * v;
      r = std::max(r, g.maxCoeff());
      total += g;
    }
    r = std::max(r, (cm.A.constant().transpose() * v).maxCoeff());
    r = std::max(r, total.maxCoeff() + 1.0);
    r /= scale;
    ck.worst(r);
    if (r >= tol) ck.fail("constant witness violated by " + std::to_string(r));
  } else if (method == "reduced-determinant") {
    strict_witness(ck, v, cm.A.evaluate(std::vector<double>(cm.A.symbols().size(), 1.0)), "A(1)");
    const auto red = reduce_bimolecular(cm);
    if (!red.exact) return ck.fail("bimolecular reduction is not exact");
    const int r = static_cast<int>(red.perp.rows());
    const poly::MultiPoly p = poly::det_poly(red.reduced) * (r % 2 == 0 ? 1.0 : -1.0);
    if (p.is_zero()) return ck.fail("reduced determinant vanishes");
    for (const auto& [e, coeff] : p.terms())
      if (coeff < 0.0) return ck.fail("reduced determinant has a negative coefficient");
  } else {
    ck.fail("unknown structural method '" + method + "'");
  }
}

Check run(const Certificate& c, const Problem& p, double tol) {
  Check ck;
  const auto& cm = p.cm;
  const bool bimolecular = c.property == Property::ErgodicityBimolecular;
  const bool stability = c.property == Property::Ergodicity || bimolecular || c.property == Property::AIC;
  const bool control = c.property == Property::OutputControllability || c.property == Property::AIC;

  switch (c.framework) {
    case Framework::Nominal: {
      const Matrix A = p.nominal_A();
      if (stability) lp_witness(ck, c.v, A, tol, "A");
      if (bimolecular && c.v) kernel(ck, *c.v, cm.Sb, tol, "v");
      if (control && ck.ok) oc_witness(ck, c, A, tol);
      break;
    }
    case Framework::Interval: {
      const auto iv = model::interval_bounds(cm.A, p.net.domains);
      if (stability) lp_witness(ck, c.v, iv.upper, tol, "A+");
      if (bimolecular && c.v) kernel(ck, *c.v, cm.Sb, tol, "v");
      if (control && ck.ok) oc_witness(ck, c, iv.lower, tol);
      break;
    }
    case Framework::Robust: {
      const auto fam = reduce_to_cv(cm, p.net.domains);
      if (stability) robust_samples(ck, c, fam, tol, bimolecular);
      if (control && ck.ok) {
        std::vector<double> lo;
        for (const auto& b : fam.box) lo.push_back(b.lo);
        oc_witness(ck, c, fam.lower_at(lo), tol);
      }
      break;
    }
    case Framework::Sign: {
      if (bimolecular) {
        const auto red = reduce_bimolecular(cm);
        if (!red.exact) {
          ck.fail("bimolecular reduction is not exact");
          break;
        }
        const Matrix S = model::sign_pattern(red.reduced, model::MixedEntryPolicy::Reject).to_real();
        lp_witness(ck, c.v_aux, S, tol, "sgn(P A)");
        if (ck.ok && c.v) kernel(ck, *c.v, cm.Sb, tol, "v");
        break;
      }
      const Matrix S = c.property == Property::OutputControllability
                           ? pattern(cm)
                           : model::sign_pattern(cm.A, model::MixedEntryPolicy::Reject).to_real();
      if (stability) lp_witness(ck, c.v, S, tol, "sgn(A)");
      if (control && ck.ok) oc_witness(ck, c, S, tol);
      break;
    }
    case Framework::Structural: {
      if (bimolecular) {
        structural_bimolecular(ck, c, cm, tol);
        break;
      }
      if (stability) structural_stability(ck, c, cm, tol);
      if (control && ck.ok) oc_witness(ck, c, pattern(cm), tol);
      break;
    }
  }
  return ck;
}

}  // namespace

VerifyResult verify(const Certificate& cert, const Problem& p, double tol) {
  VerifyResult out;
  if (cert.network_hash != p.hash) {
    out.message = "network hash mismatch: certificate was issued for a different network";
    return out;
  }
  if (!cert.holds()) {
    out.ok = true;
    out.message = std::string("verdict '") + to_string(cert.verdict) + "' carries no witness; nothing to check";
    return out;
  }
  Check ck;
  try {
    ck = run(cert, p, tol);
  } catch (const Error& e) {
    ck.fail(std::string("could not rebuild the test matrices: ") + e.what());
  }
  out.ok = ck.ok;
  out.residual = ck.residual;
  out.message = ck.ok ? "all witness conditions hold" : ck.message;
  return out;
}

}  // namespace ergocert::analysis
