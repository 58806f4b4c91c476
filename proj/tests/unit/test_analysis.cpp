#include "doctest.h"

#include "ergocert/analysis.hpp"
#include "ergocert/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <random>

using namespace ergocert;
using namespace ergocert::analysis;
using fixtures::FourSpecies;

namespace {

ControlSpec spec(int a, int l) {
  ControlSpec s;
  s.actuated = a;
  s.controlled = l;
  return s;
}

void check_verifies(const Certificate& c, const Problem& p) {
  if (!c.holds()) return;
  const auto r = verify(c, p);
  CHECK_MESSAGE(r.ok, to_string(c.framework) << "/" << to_string(c.property) << ": " << r.message);
  CHECK(r.residual < 1e-8);
}

model::IntervalMatrix box(const Matrix& lo, const Matrix& hi) {
  model::IntervalMatrix iv;
  iv.lower = lo;
  iv.upper = hi;
  return iv;
}

model::SignMatrix pattern(const Matrix& m) { return model::SignMatrix::of(m); }

}  // namespace

// ---------------------------------------------------------------------------
// nominal

TEST_CASE("nominal ergodicity") {
  const auto c = ergodicity_nominal(Matrix{{-1.0}});
  CHECK(c.verdict == Verdict::Holds);
  REQUIRE(c.v);
  CHECK((*c.v)[0] >= 1.0);
  CHECK(ergodicity_nominal(Matrix{{0, 0}, {1, -1}}).verdict == Verdict::Fails);

  const auto p = FourSpecies().drop("ct3").drop("ct4").problem();
  const Matrix A = p.nominal_A();
  CHECK(oracles::pf_by_charpoly(A) < 0.0);
  const auto e = ergodicity(p, Framework::Nominal);
  CHECK(e.verdict == Verdict::Holds);
  check_verifies(e, p);

  // at unit rates the two feedback loops through X4 make the full network unstable
  const auto full = FourSpecies().problem();
  CHECK(oracles::pf_by_charpoly(full.nominal_A()) > 0.0);
  CHECK(ergodicity(full, Framework::Nominal).verdict == Verdict::Fails);
}

TEST_CASE("nominal bimolecular ergodicity") {
  const Matrix A{{-1, 0}, {1, -2}};
  const auto none = ergodicity_bimolecular_nominal(A, Matrix(2, 0));
  CHECK(none.verdict == ergodicity_nominal(A).verdict);

  const auto p = fixtures::from_source(R"(
0 -> X1 @ kb
X1 -> 0 @ dg1
X2 -> 0 @ dg2
X3 -> 0 @ dg3
X2 -> X3 @ cv1
X3 -> X1 @ cv2
X1 + X2 -> 2 X2 @ rb
kb = 1
dg1 = 1
dg2 = 1
dg3 = 1
cv1 = 1
cv2 = 1
rb = 1
)");
  const auto c = ergodicity(p, Framework::Nominal);
  CHECK(c.property == Property::ErgodicityBimolecular);
  REQUIRE(c.verdict == Verdict::Holds);
  CHECK(std::abs((p.cm.Sb.transpose() * *c.v)(0)) < 1e-9);
  CHECK((*c.v)[0] == doctest::Approx((*c.v)[1]));
  check_verifies(c, p);

  // Sb^T v = 0 forces v = (2, 1) t, and then v^T A has a positive entry
  const Matrix A2{{-1, 0}, {3, -1}};
  CHECK(ergodicity_nominal(A2).holds());
  const auto u = ergodicity_bimolecular_nominal(A2, Matrix{{1}, {-2}});
  CHECK(u.verdict == Verdict::Unknown);
  CHECK_FALSE(u.caveats.empty());
}

TEST_CASE("open-network precondition") {
  const auto p = fixtures::load("closed.net");
  CHECK_THROWS_AS(ergodicity(p, Framework::Nominal), PreconditionError);
  try {
    ergodicity(p, Framework::Structural);
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("X1") != std::string::npos);
  }
}

TEST_CASE("nominal output controllability") {
  const auto one = output_controllability(Matrix{{-1.0}}, 0, 0);
  CHECK(one.verdict == Verdict::Holds);
  REQUIRE(one.w);
  CHECK((*one.w)[0] == doctest::Approx(1.0));

  const auto half = output_controllability(Matrix{{-1, 0}, {0.5, 0}}, 0, 1);
  CHECK(half.verdict == Verdict::Holds);
  REQUIRE(half.mu_shift);
  CHECK(*half.mu_shift == doctest::Approx(1.0));

  const auto diag = output_controllability(Matrix{{-1, 0}, {0, -2}}, 0, 1);
  CHECK(diag.verdict == Verdict::Fails);
  CHECK(diag.counterexample.find("no path") != std::string::npos);
}

TEST_CASE("graph paths") {
  Matrix chain = Matrix::Zero(3, 3);
  chain(1, 0) = 1;
  chain(2, 1) = 1;
  CHECK(graph_path(chain, 0, 2));
  CHECK_FALSE(graph_path(chain, 2, 0));
  CHECK(graph_path(chain, 1, 1));
  CHECK_FALSE(graph_path(-Matrix::Identity(3, 3), 0, 1));

  const Matrix A = FourSpecies().problem().nominal_A();
  CHECK(graph_path(A, 0, 3));
  Matrix via2 = A, via3 = A;
  via2(2, 0) = 0;  // drop ct2: 1 -> 2 -> 4 remains
  via3(1, 0) = 0;  // drop ct1: 1 -> 3 -> 4 remains
  CHECK(graph_path(via2, 0, 3));
  CHECK(graph_path(via3, 0, 3));
  via2(1, 0) = 0;
  CHECK_FALSE(graph_path(via2, 0, 3));

  Matrix cyc = Matrix::Zero(3, 3);
  cyc(1, 0) = 1;
  cyc(0, 1) = 1;
  const auto c = find_cycle(cyc);
  REQUIRE(c.size() == 3);
  CHECK(c.front() == c.back());
  CHECK(find_cycle(chain).empty());
}

TEST_CASE("three controllability criteria agree on random systems") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> dens(0.05, 0.6);
  int holds = 0, fails = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = dim(rng);
    const Matrix M = fixtures::random_metzler(rng, d, dens(rng), 1.5);
    const int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % d);
    const auto c = output_controllability(M, i, j);
    CHECK(c.verdict != Verdict::Unknown);
    CHECK(c.holds() == oc_rank_row(M, i, j));
    CHECK(c.holds() == graph_path(M, i, j));
    (c.holds() ? holds : fails)++;
  }
  CHECK(holds > 20);
  CHECK(fails > 20);
}

TEST_CASE("nominal AIC") {
  const Vector b0{{2.0}};
  const auto bd = aic_nominal(Matrix{{-1.0}}, spec(0, 0), &b0);
  CHECK(bd.verdict == Verdict::Holds);
  REQUIRE(bd.w);
  CHECK((*bd.w)[0] == doctest::Approx(1.0));
  check_verifies(aic(fixtures::load("birth_death.net"), Framework::Nominal, spec(0, 0)),
                 fixtures::load("birth_death.net"));

  const auto p = FourSpecies().drop("ct3").drop("ct4").problem();
  const auto c = aic(p, Framework::Nominal, spec(0, 3));
  CHECK(c.verdict == Verdict::Holds);
  check_verifies(c, p);

  const auto bad = aic_nominal(Matrix{{-1, 2}, {2, -1}}, spec(0, 1));
  CHECK(bad.verdict == Verdict::Fails);
  CHECK_FALSE(bad.counterexample.empty());
}

TEST_CASE("set-point bound") {
  const auto s = setpoint_bound_nominal(Matrix{{-1.0}}, Vector{{1.0}}, 0);
  CHECK(s.alpha == doctest::Approx(0.5));
  CHECK(s.bound == doctest::Approx(2.0));
  CHECK(setpoint_bound_nominal(Matrix{{-1.0}}, Vector{{0.0}}, 0).bound == 0.0);

  const Matrix A{{-2, 1}, {0.5, -1}};
  const Vector b{{1.0}, {0.3}};
  const double one = setpoint_bound_nominal(A, b, 1).bound;
  const double ten = setpoint_bound_nominal(A, 10.0 * b, 1).bound;
  CHECK(ten == doctest::Approx(10.0 * one));
}

TEST_CASE("AIC holds exactly when ergodicity and controllability both hold") {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_real_distribution<double> scale(0.2, 1.5);
  int agree = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = dim(rng);
    const Matrix M = fixtures::random_metzler(rng, d, 0.4, scale(rng));
    const ControlSpec cs = spec(static_cast<int>(rng() % d), static_cast<int>(rng() % d));
    const bool both = ergodicity_nominal(M).holds() && output_controllability(M, cs).holds();
    const auto c = aic_nominal(M, cs);
    CHECK(c.holds() == both);
    agree += c.holds() == both;
  }
  CHECK(agree == 200);
}

// ---------------------------------------------------------------------------
// interval

TEST_CASE("interval ergodicity") {
  CHECK(ergodicity_interval(box(Matrix{{-2.0}}, Matrix{{-1.0}})).holds());
  const auto p = fixtures::load("conversion.net");
  const auto c = ergodicity(p, Framework::Interval);
  CHECK(c.verdict == Verdict::Fails);
  CHECK_FALSE(c.caveats.empty());

  // sampled members of a family with Hurwitz A+ are all Hurwitz
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Matrix hi{{-2, 0.5, 0.3}, {0.4, -1.5, 0.2}, {0.1, 0.6, -1.0}};
  const Matrix lo{{-3, 0.0, 0.1}, {0.0, -2.5, 0.0}, {0.0, 0.2, -2.0}};
  REQUIRE(ergodicity_interval(box(lo, hi)).holds());
  for (int s = 0; s < 500; ++s) {
    Matrix m(3, 3);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = lo.data()[i] + u(rng) * (hi.data()[i] - lo.data()[i]);
    CHECK(linopt::is_hurwitz_metzler(m).hurwitz);
  }
}

TEST_CASE("interval bimolecular ergodicity") {
  const Matrix A{{-1, 0}, {1, -2}};
  CHECK(ergodicity_interval_bimolecular(box(A, A), Matrix(2, 0)).verdict == ergodicity_interval(box(A, A)).verdict);

  const auto p = fixtures::from_source(R"(
0 -> X1 @ kb
X1 -> 0 @ dg1
X2 -> 0 @ dg2
X3 -> 0 @ dg3
X2 -> X3 @ cv1
X3 -> X1 @ cv2
X1 + X2 -> 2 X2 @ rb
kb = 1
dg1 in [1, 2]
dg2 in [1, 2]
dg3 in [2, 3]
cv1 in [1, 2]
cv2 in [1, 2]
rb > 0
)");
  const auto c = ergodicity(p, Framework::Interval);
  CHECK(c.verdict == Verdict::Holds);
  check_verifies(c, p);

  const auto u = ergodicity_interval_bimolecular(box(Matrix{{-1, 0}, {3, -1}}, Matrix{{-1, 0}, {3, -1}}),
                                                 Matrix{{1}, {-2}});
  CHECK(u.verdict == Verdict::Unknown);
}

TEST_CASE("interval output controllability") {
  const auto p = fixtures::load("halfopen.net");
  const auto c = output_controllability(p, Framework::Interval, spec(0, 1));
  CHECK(c.verdict == Verdict::Fails);
  bool warned = false;
  for (const auto& cv : c.caveats) warned |= cv.find("open") != std::string::npos;
  CHECK(warned);
  CHECK(output_controllability(p, Framework::Structural, spec(0, 1)).holds());

  const auto good = fixtures::four_species_interval().problem();
  const auto g = output_controllability(good, Framework::Interval, spec(0, 3));
  CHECK(g.holds());
  check_verifies(g, good);
}

TEST_CASE("interval controllability verdict matches sampled members") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int fam = 0; fam < 30; ++fam) {
    const Matrix hi = fixtures::random_metzler(rng, 4, 0.35, 0.5);
    Matrix lo = hi;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j)
          lo(i, j) -= u(rng);
        else if (hi(i, j) > 0.0)
          lo(i, j) = u(rng) < 0.3 ? 0.0 : hi(i, j) * u(rng);
      }
    const ControlSpec cs = spec(0, 3);
    const auto c = output_controllability_interval(box(lo, hi), cs);
    bool all = true;
    for (int s = 0; s < 200; ++s) {
      Matrix m = lo;  // first sample: the lower corner, a member of the closed family
      if (s > 0)
        for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] += u(rng) * (hi.data()[k] - lo.data()[k]);
      all &= graph_path(m, 0, 3);
    }
    CHECK(c.holds() == all);
  }
}

TEST_CASE("interval AIC") {
  const Matrix A{{-2, 1}, {0.5, -1}};
  const Vector b0{{1.0}, {0.0}};
  const auto iv = aic_interval(box(A, A), spec(0, 1), &b0);
  const auto nom = aic_nominal(A, spec(0, 1), &b0);
  CHECK(iv.verdict == nom.verdict);
  REQUIRE(iv.setpoint_bound);
  REQUIRE(nom.setpoint_bound);
  // q = 1 form: r = -1^T A^-1 = (1, 2), alpha = 1/max r, bound r.b0 / (alpha r_2)
  CHECK(*iv.setpoint_bound == doctest::Approx(1.0));
  CHECK(*iv.alpha == doctest::Approx(0.5));

  const auto good = fixtures::four_species_interval().problem();
  const auto c = aic(good, Framework::Interval, spec(0, 3));
  CHECK(c.holds());
  check_verifies(c, good);

  const auto bad = aic(fixtures::load("conversion.net"), Framework::Interval, spec(0, 1));
  CHECK(bad.verdict == Verdict::Fails);
}

// ---------------------------------------------------------------------------
// robust

TEST_CASE("robust family of the four-species network") {
  const auto p = FourSpecies().set("cv1", "in [0.5, 1]").set("cv2", "in [0.5, 1]").set("cv3", "in [0.5, 1]").problem();
  const auto fam = reduce_to_cv(p.cm, p.net.domains);
  CHECK(fam.upper.rows() == 4);
  CHECK(fam.cv.size() == 3);
  CHECK(fam.box[0].lo == 0.5);

  const auto conv_free = fixtures::load("birth_death.net");
  const auto f0 = reduce_to_cv(conv_free.cm, conv_free.net.domains);
  CHECK(f0.cv.empty());
  CHECK(ergodicity_robust(f0).verdict == ergodicity(conv_free, Framework::Interval).verdict);
}

TEST_CASE("robust ergodicity flips with the stability inequality") {
  const auto good = fixtures::four_species_robust("in [0.5, 1]").problem();
  const auto c = ergodicity(good, Framework::Robust);
  CHECK(c.verdict == Verdict::Holds);
  CHECK(c.samples.size() >= 100);
  CHECK(std::stoi(c.notes.at("witness_degree")) <= 3);
  check_verifies(c, good);

  const auto bad = fixtures::four_species_robust("in [1, 2]").problem();
  const auto f = ergodicity(bad, Framework::Robust);
  CHECK(f.verdict == Verdict::Fails);
  CHECK(f.counterexample_point.size() == 3);
}

TEST_CASE("robust stability of the conversion network where interval analysis fails") {
  const auto p = fixtures::load("conversion.net");
  const auto c = ergodicity(p, Framework::Robust);
  CHECK(c.verdict == Verdict::Holds);
  check_verifies(c, p);
  CHECK(ergodicity(p, Framework::Structural).holds());
}

TEST_CASE("robust bimolecular ergodicity on the reduced system") {
  const auto p = fixtures::from_source(R"(
0 -> X1 @ kb
X1 -> 0 @ dg1
X2 -> 0 @ dg2
X3 -> 0 @ dg3
X2 -> X3 @ cv1
X3 -> X1 @ cv2
X1 + X2 -> 2 X2 @ rb
kb = 1
dg1 in [0.1, 10]
dg2 in [0.1, 10]
dg3 in [0.1, 10]
cv1 in [0.1, 10]
cv2 in [0.1, 10]
rb > 0
)");
  const auto c = ergodicity(p, Framework::Robust);
  CHECK(c.verdict == Verdict::Holds);
  check_verifies(c, p);

  const auto red = reduce_bimolecular(p.cm);
  CHECK(red.exact);
  CHECK(red.perp == Matrix{{1, 1, 0}, {0, 0, 1}});
  CHECK(left_annihilator(Matrix(3, 0)) == Matrix::Identity(3, 3));
}

TEST_CASE("robust controllability and AIC") {
  const auto good = fixtures::four_species_robust("in [0.5, 1]").problem();
  const auto oc = output_controllability(good, Framework::Robust, spec(0, 3));
  CHECK(oc.holds());
  check_verifies(oc, good);

  const auto a = aic(good, Framework::Robust, spec(0, 3));
  CHECK(a.holds());
  CHECK(a.setpoint_bound.has_value());
  check_verifies(a, good);

  CHECK(aic(fixtures::four_species_robust("in [1, 2]").problem(), Framework::Robust, spec(0, 3)).verdict == Verdict::Fails);

  const auto bd = fixtures::load("birth_death.net");
  CHECK(aic(bd, Framework::Robust, spec(0, 0)).verdict == aic(bd, Framework::Interval, spec(0, 0)).verdict);
}

TEST_CASE("adjugate witness of the robust family") {
  const auto p = fixtures::four_species_robust("in [0.5, 1]").problem();
  const auto fam = reduce_to_cv(p.cm, p.net.domains);
  const auto v = adjugate_witness(fam.upper);
  REQUIRE(v.size() == 4);
  for (const auto& e : v) CHECK(e.degree() <= 3);
  const std::vector<double> mid = fam.midpoint();
  Vector vm(4);
  for (int i = 0; i < 4; ++i) vm[i] = v[i].evaluate(mid);
  CHECK(vm.minCoeff() > 0.0);
  CHECK((fam.upper_at(mid).transpose() * vm).maxCoeff() < 0.0);
}

// ---------------------------------------------------------------------------
// sign

TEST_CASE("sign ergodicity") {
  CHECK(ergodicity_sign(pattern(Matrix{{-1.0}})).holds());
  const auto two = ergodicity_sign(pattern(Matrix{{-1, 1}, {1, -1}}));
  CHECK(two.verdict == Verdict::Fails);
  CHECK(two.counterexample.find("cycle") != std::string::npos);
  CHECK(ergodicity_sign(pattern(Matrix{{-1, 0, 0}, {1, -1, 0}, {1, 1, -1}})).holds());
  CHECK(ergodicity_sign(pattern(Matrix{{0, 0}, {1, -1}})).verdict == Verdict::Fails);

  CHECK_THROWS_AS(ergodicity(FourSpecies().problem(), Framework::Sign), SignPatternError);
  const auto erg3 = FourSpecies().drop("ct3").drop("ct4").drop("cv3").problem();
  const auto c = ergodicity(erg3, Framework::Sign);
  CHECK(c.holds());
  check_verifies(c, erg3);
}

TEST_CASE("sign controllability") {
  const auto p = FourSpecies().problem();
  const auto c = output_controllability(p, Framework::Sign, spec(0, 3));
  CHECK(c.holds());
  CHECK_FALSE(c.caveats.empty());
  check_verifies(c, p);
  CHECK(output_controllability_sign(pattern(Matrix{{-1, 0}, {0, -1}}), spec(0, 1)).verdict == Verdict::Fails);

  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> sgn(0, 3);
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + t % 5;
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = i == j ? (sgn(rng) == 0 ? 0.0 : -1.0) : (sgn(rng) == 0 ? 1.0 : 0.0);
    const int a = static_cast<int>(rng() % d), l = static_cast<int>(rng() % d);
    CHECK(output_controllability_sign(pattern(m), spec(a, l)).holds() == graph_path(m, a, l));
  }
}

TEST_CASE("sign AIC") {
  const auto chain = fixtures::from_source("0 -> X1 @ b\nX1 -> X2 @ c\nX2 -> 0 @ d\nb = 1\nc = 1\nd = 1\n");
  const auto c = aic(chain, Framework::Sign, spec(0, 1));
  CHECK(c.holds());
  check_verifies(c, chain);

  const auto erg3 = FourSpecies().drop("ct3").drop("ct4").drop("cv3").problem();
  CHECK(aic(erg3, Framework::Sign, spec(0, 3)).holds());
  CHECK(aic_sign(pattern(Matrix{{-1, 1}, {1, -1}}), spec(0, 1)).verdict == Verdict::Fails);
}

// ---------------------------------------------------------------------------
// structural

TEST_CASE("structural ergodicity") {
  const auto chain = fixtures::from_source("0 -> X1 @ b\nX1 -> X2 @ c\nX2 -> 0 @ d\nb = 1\nc = 1\nd = 1\n");
  const auto t = structural_tests(chain.cm);
  CHECK(t.hypothesis);
  CHECK(t.a1_hurwitz);
  CHECK(t.f_holds);
  CHECK(t.g_holds);
  CHECK(ergodicity(chain, Framework::Structural).holds());

  const auto erg4 = FourSpecies().drop("ct3").drop("ct4").problem();
  const auto c = ergodicity(erg4, Framework::Structural);
  CHECK(c.holds());
  check_verifies(c, erg4);

  const auto full = FourSpecies().drop("ct4").problem();
  const auto f = ergodicity(full, Framework::Structural);
  CHECK(f.verdict == Verdict::Fails);
  CHECK(f.counterexample.find("ct3") != std::string::npos);
  const auto tf = structural_tests(full.cm);
  CHECK(tf.f_holds == tf.g_holds);
  CHECK_FALSE(tf.catalytic_cycle.empty());
}

TEST_CASE("structural controllability and AIC") {
  const auto p = FourSpecies().problem();
  const auto oc = output_controllability(p, Framework::Structural, spec(0, 3));
  CHECK(oc.holds());
  check_verifies(oc, p);
  const auto disc = fixtures::from_source("X1 -> 0 @ a\nX2 -> 0 @ b\na = 1\nb = 1\n");
  CHECK(output_controllability(disc, Framework::Structural, spec(0, 1)).verdict == Verdict::Fails);

  const auto bd = fixtures::load("birth_death.net");
  CHECK(aic(bd, Framework::Structural, spec(0, 0)).holds());
  const auto erg4 = FourSpecies().drop("ct3").drop("ct4").problem();
  const auto a = aic(erg4, Framework::Structural, spec(0, 3));
  CHECK(a.holds());
  check_verifies(a, erg4);
  CHECK(aic(FourSpecies().drop("ct4").problem(), Framework::Structural, spec(0, 3)).verdict == Verdict::Fails);
}

TEST_CASE("structural bimolecular ergodicity") {
  const auto sir = fixtures::load("sir.net");
  const auto c = ergodicity(sir, Framework::Structural);
  CHECK(c.holds());
  check_verifies(c, sir);
  const auto s = ergodicity(sir, Framework::Sign);
  CHECK(s.verdict == Verdict::Fails);
  CHECK(s.counterexample.find("X1+X2") != std::string::npos);
}

TEST_CASE("framework monotonicity on shared inputs") {
  // sign Holds implies structural Holds on conversion-free networks
  const auto chain = fixtures::from_source("0 -> X1 @ b\nX1 -> X1 + X2 @ c\nX2 -> 0 @ d\nX1 -> 0 @ e\nb = 1\nc in [1, 2]\nd = 1\ne in [1, 2]\n");
  for (const auto& p : {chain, fixtures::load("birth_death.net")}) {
    if (ergodicity(p, Framework::Sign).holds()) CHECK(ergodicity(p, Framework::Structural).holds());
    if (ergodicity(p, Framework::Interval).holds()) CHECK(ergodicity(p, Framework::Robust).holds());
  }
  const auto good = fixtures::four_species_interval().problem();
  REQUIRE(ergodicity(good, Framework::Interval).holds());
  CHECK(ergodicity(good, Framework::Robust).holds());
}

// ---------------------------------------------------------------------------
// driver, verification, serialisation

TEST_CASE("analyze produces certificates that verify and round-trip") {
  const auto p = fixtures::four_species_interval().problem();
  for (Framework f : {Framework::Interval, Framework::Robust, Framework::Structural}) {
    const auto certs = analyze(p, f, spec(0, 3));
    REQUIRE(certs.size() == 3);
    for (const auto& c : certs) {
      CHECK(c.network_hash == p.hash);
      check_verifies(c, p);
      const auto back = certificate_from_json(to_json(c));
      CHECK(back.verdict == c.verdict);
      CHECK(back.network_hash == c.network_hash);
      CHECK(verify(back, p).ok);
    }
    const auto again = certificates_from_report(report_json(certs, {{"tool", "test"}}));
    CHECK(again.size() == certs.size());
  }
  CHECK(analyze(p, Framework::Interval, std::nullopt).size() == 1);
}

TEST_CASE("verify rejects tampered witnesses and foreign networks") {
  const auto p = fixtures::four_species_interval().problem();
  auto c = ergodicity(p, Framework::Interval);
  REQUIRE(c.holds());
  auto bad = c;
  (*bad.v)[0] = -1.0;
  CHECK_FALSE(verify(bad, p).ok);

  const auto other = fixtures::load("birth_death.net");
  CHECK_FALSE(verify(c, other).ok);
  auto nohash = c;
  nohash.network_hash.clear();
  CHECK_FALSE(verify(nohash, p).ok);

  auto oc = output_controllability(p, Framework::Interval, spec(0, 3));
  REQUIRE(oc.holds());
  (*oc.w)[3] += 1.0;
  CHECK_FALSE(verify(oc, p).ok);

  CHECK_THROWS_AS(certificate_from_json("{not json"), PreconditionError);
  CHECK_THROWS_AS(certificate_from_json("{\"framework\": \"nominal\"}"), PreconditionError);
}

TEST_CASE("AIC records the irreducibility assumption") {
  const auto bd = fixtures::load("birth_death.net");
  const auto c = aic(bd, Framework::Nominal, spec(0, 0));
  CHECK_FALSE(c.irreducible_asserted);
  CHECK_FALSE(c.caveats.empty());
  AnalysisOptions opts;
  opts.assert_irreducible = true;
  CHECK(aic(bd, Framework::Nominal, spec(0, 0), opts).irreducible_asserted);
}

TEST_CASE("control spec validation") {
  const auto bd = fixtures::load("birth_death.net");
  CHECK_THROWS_AS(aic(bd, Framework::Nominal, spec(0, 1)), PreconditionError);
  ControlSpec s = spec(0, 0);
  s.eta = 0.0;
  CHECK_THROWS_AS(aic(bd, Framework::Nominal, s), PreconditionError);
  CHECK_THROWS_AS(ergodicity(fixtures::load("four_species.net"), Framework::Nominal), PreconditionError);
}
