#include "doctest.h"

#include "ergocert/error.hpp"
#include "ergocert/model.hpp"
#include "fixtures.hpp"

#include "json.hpp"

using namespace ergocert;
using namespace ergocert::model;

TEST_CASE("parse: species, reactions and domains") {
  const auto net = parse_network(R"(
# comment line
0 -> X1 @ kb        # trailing comment
X1 + X2 -> 2 X2 @ kinf
X1 -> 0 @ kd
kb = 2.5
kinf > 0
kd in (0.5, 3]
)");
  CHECK(net.species == std::vector<std::string>{"X1", "X2"});
  REQUIRE(net.K() == 3);
  CHECK(net.reactions[0].reactants.empty());
  CHECK(net.reactions[1].order() == 2);
  CHECK(net.reactions[1].products == Complex{{1, 2}});
  CHECK(net.domain("kb") == Domain::fixed(2.5));
  CHECK(net.domain("kinf").kind == Domain::Kind::PositiveUnbounded);
  const auto& kd = net.domain("kd");
  CHECK(kd.lo == 0.5);
  CHECK_FALSE(kd.lo_closed);
  CHECK(kd.hi_closed);
  CHECK(net.stoichiometry(1) == Eigen::Vector2i(-1, 1));
}

TEST_CASE("parse: errors carry line and column") {
  auto fails_at = [](const std::string& text, std::size_t line) {
    try {
      parse_network(text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() >= 1);
      return;
    }
    FAIL("no ParseError for: " << text);
  };
  fails_at("X1 + X2 + X3 -> 0 @ a\na = 1\n", 1);      // trimolecular
  fails_at("X1 -> X1 @ a\na = 1\n", 1);               // no-op
  fails_at("X1 -> 0 @ a\nX2 -> 0 @ a\na = 1\n", 2);   // duplicate rate
  fails_at("X1 -> 0 @ a\n", 1);                       // undeclared rate
  fails_at("X1 -> 0 @ a\na = 1\nb = 2\n", 3);         // domain for unknown symbol
  fails_at("X1 -> 0 @ a\na = 1\na = 2\n", 3);         // duplicate declaration
  fails_at("X1 -> 0 @ a\na in [2, 1]\n", 2);          // empty interval
  fails_at("X1 -> 0 @ a\na = 0\n", 2);                // fixed value must be positive
  fails_at("X1 -> . @ a\na = 1\n", 1);                // malformed number
  fails_at("1.5 X1 -> 0 @ a\na = 1\n", 1);            // stoichiometry must be integral
  fails_at("X1 -> 0 a\na = 1\n", 1);                  // missing '@'
  CHECK_THROWS_AS(parse_network("# nothing\n"), ParseError);
}

TEST_CASE("to_source round-trips") {
  const auto p = fixtures::load("four_species.net");
  const auto again = parse_network(to_source(p.net));
  CHECK(again.species == p.net.species);
  CHECK(again.K() == p.net.K());
  for (int k = 0; k < again.K(); ++k) {
    CHECK(again.reactions[k].rate == p.net.reactions[k].rate);
    CHECK(again.stoichiometry(k) == p.net.stoichiometry(k));
    CHECK(again.domain(again.reactions[k].rate) == p.net.domain(p.net.reactions[k].rate));
  }
}

TEST_CASE("decompose classifies first-order reactions by stoichiometric sign") {
  const auto net = fixtures::load("four_species.net").net;
  const auto dec = decompose(net);
  CHECK(dec.dg.size() == 4);
  CHECK(dec.ct.size() == 4);
  CHECK(dec.cv.size() == 3);
  CHECK(dec.s0.empty());
  CHECK(dec.sb.empty());
  for (int k : dec.cv) CHECK(dec.classes[k] == ReactionClass::Conversion);
  // X3 -> 2 X3 has a nonnegative column: catalytic
  const int ct4 = static_cast<int>(std::find(dec.rates.begin(), dec.rates.end(), "ct4") - dec.rates.begin());
  CHECK(dec.classes[ct4] == ReactionClass::Catalytic);
  CHECK(dec.Wct().rows() == 4);
  CHECK(dec.Su().cols() == 11);

  const auto sir = decompose(fixtures::load("sir.net").net);
  CHECK(sir.sb.size() == 1);
  CHECK(sir.bimolecular_reactants[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("characteristic matrix of the four-species network at unit rates") {
  const auto p = fixtures::FourSpecies().problem();
  const Matrix A = p.cm.A.evaluate([](const std::string&) { return 1.0; });
  CHECK(A.diagonal() == Eigen::Vector4d(-1, -2, -1, -2));
  Matrix expected(4, 4);
  expected << -1, 0, 0, 1,  //
      1, -2, 0, 0,          //
      1, 0, -1, 1,          //
      0, 1, 1, -2;
  CHECK(A == expected);
  CHECK(p.cm.b0.evaluate(std::map<std::string, double>{}).isZero());
}

TEST_CASE("sign pattern flags the mixed diagonal entry") {
  const auto p = fixtures::FourSpecies().problem();
  std::vector<std::pair<int, int>> mixed;
  const auto s = sign_pattern(p.cm.A, MixedEntryPolicy::ResolveNegative, &mixed);
  REQUIRE(mixed.size() == 1);
  CHECK(mixed[0] == std::pair<int, int>{2, 2});
  CHECK(s(2, 2) == Sign::Negative);
  CHECK(s(0, 3) == Sign::Positive);
  CHECK(s(1, 2) == Sign::Zero);
  try {
    sign_pattern(p.cm.A, MixedEntryPolicy::Reject);
    FAIL("expected SignPatternError");
  } catch (const SignPatternError& e) {
    CHECK(e.entries() == mixed);
  }
  CHECK(SignMatrix::of(Matrix{{-2, 1}, {0, 3}}).to_string() == "[- +; 0 +]");
}

TEST_CASE("interval bounds and open endpoints") {
  const auto p = fixtures::load("halfopen.net");
  const auto iv = interval_bounds(p.cm.A, p.net.domains);
  CHECK(iv.lower(1, 0) == 0.0);
  CHECK(iv.upper(1, 0) == 1.0);
  REQUIRE(iv.lower_not_attained.size() == 1);
  CHECK(iv.lower_not_attained[0] == std::pair<int, int>{1, 0});
  CHECK_FALSE(iv.warnings.empty());

  const auto conv = fixtures::load("conversion.net");
  const auto ivc = interval_bounds(conv.cm.A, conv.net.domains);
  CHECK(ivc.upper == Matrix{{-2, 4}, {4, -2}});
  CHECK(ivc.lower == Matrix{{-5, 1}, {1, -5}});

  const auto unbounded = fixtures::load("sir.net");
  CHECK_NOTHROW(interval_bounds(unbounded.cm.A, unbounded.net.domains));
  CHECK_THROWS_AS(interval_bounds(unbounded.cm.A, {}), PreconditionError);
}

TEST_CASE("robust family brackets every member of the box") {
  // A(rho) <= A(dg-, ct+, rho_cv) entrywise for rho in the box
  const auto p = fixtures::four_species_robust("in [0.5, 1]").problem();
  const auto fam = analysis::reduce_to_cv(p.cm, p.net.domains);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 500; ++s) {
    std::map<std::string, double> rho;
    for (const auto& [name, dom] : p.net.domains) rho[name] = dom.lo + u(rng) * (dom.hi - dom.lo);
    std::vector<double> cv;
    for (const auto& name : fam.cv) cv.push_back(rho[name]);
    const Matrix diff = fam.upper_at(cv) - p.cm.A.evaluate(rho);
    CHECK(diff.minCoeff() >= -1e-12);
    const Matrix low = p.cm.A.evaluate(rho) - fam.lower_at(cv);
    CHECK(low.minCoeff() >= -1e-12);
  }
  CHECK(fam.cv == std::vector<std::string>{"cv1", "cv2", "cv3"});
}

TEST_CASE("openness") {
  CHECK(is_open(decompose(fixtures::load("four_species.net").net)).open);
  CHECK(is_open(decompose(fixtures::load("sir.net").net)).open);
  const auto t = is_open(decompose(fixtures::load("closed.net").net));
  CHECK_FALSE(t.open);
  CHECK(t.witness.minCoeff() > 0.0);
}

TEST_CASE("canonical dump lists blocks and affine matrices") {
  const auto p = fixtures::load("sir.net");
  const auto j = nlohmann::json::parse(canonical_dump(p.dec, p.cm));
  CHECK(j["species"].size() == 3);
  CHECK(j.contains("A"));
  CHECK(j.contains("b0"));
  CHECK(j["blocks"]["sb"].size() == 1);
}

TEST_CASE("affine matrix helpers") {
  AffineMatrix m(2, 2);
  m.add_term("a", Matrix{{-1, 0}, {1, 0}});
  m.add_term("b", Matrix{{0, 2}, {0, -2}});
  m.add_term("a", Matrix{{-1, 0}, {0, 0}});
  CHECK(m.symbols().size() == 2);
  CHECK(m.evaluate(std::vector<double>{1.0, 0.5}) == Matrix{{-2, 1}, {1, -1}});
  const auto s = m.substitute({{"a", 2.0}});
  CHECK(s.symbols() == std::vector<std::string>{"b"});
  CHECK(s.evaluate(std::vector<double>{0.0}) == Matrix{{-4, 0}, {2, 0}});
  const auto [c, terms] = m.entry(0, 0);
  CHECK(c == 0.0);
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].second == -2.0);
  CHECK(m.left_multiply(Matrix{{1, 1}}).evaluate(std::vector<double>{1, 1}) == Matrix{{-1, 0}});
  CHECK(m.select_columns({1}).cols() == 1);
}
