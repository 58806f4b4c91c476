#include "doctest.h"

#include "ergocert/error.hpp"
#include "ergocert/linopt.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <random>

using namespace ergocert;
using namespace ergocert::linopt;

namespace {

LinearProblem dense_problem(const Matrix& A, const Vector& b) {
  LinearProblem p;
  p.add_variables(static_cast<int>(A.cols()), "x");
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    std::vector<std::pair<int, double>> row;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0.0) row.emplace_back(static_cast<int>(j), A(i, j));
    p.add_inequality(row, b[i]);
  }
  return p;
}

}  // namespace

TEST_CASE("feasibility: trivial instances") {
  LinearProblem a;
  const int x = a.add_variable("x", -kInf, kInf);
  a.add_inequality({{x, -1.0}}, -1.0);  // x >= 1
  a.add_inequality({{x, 1.0}}, 0.0);    // x <= 0
  CHECK(solve_feasibility(a).status == Status::Infeasible);

  LinearProblem b;
  const int y0 = b.add_variables(2, "y");
  b.add_equality({{y0, 1.0}, {y0 + 1, 1.0}}, 1.0);
  const auto r = solve_feasibility(b);
  REQUIRE(r.feasible());
  CHECK(r.x.sum() == doctest::Approx(1.0));
  CHECK(r.x.minCoeff() >= -1e-12);
}

TEST_CASE("minimize: bounded and unbounded objectives") {
  LinearProblem p;
  const int x = p.add_variables(2, "x");
  p.add_inequality({{x, 1.0}, {x + 1, 1.0}}, 4.0);
  p.add_inequality({{x, 1.0}, {x + 1, 3.0}}, 6.0);
  const auto r = minimize(p, Vector{{-1.0, -1.0}});
  REQUIRE(r.feasible());
  CHECK(r.objective == doctest::Approx(-4.0));

  LinearProblem q;
  const int z = q.add_variable("z", -kInf, kInf);
  q.add_inequality({{z, 1.0}}, 3.0);
  CHECK(minimize(q, Vector{{1.0}}).status == Status::Unbounded);

  LinearProblem s;
  const int u = s.add_variable("u", 2.0, 5.0);
  const auto rs = minimize(s, Vector{{1.0}});
  REQUIRE(rs.feasible());
  CHECK(rs.x[u] == doctest::Approx(2.0));
}

TEST_CASE("feasibility agrees with vertex enumeration on random sub-instances") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Matrix A(40, 20);
    Vector b(40);
    for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = u(rng);
    for (int i = 0; i < 40; ++i) b[i] = u(rng) - 0.3;
    const auto full = solve_feasibility(dense_problem(A, b));
    REQUIRE(full.status != Status::Numerical);
    if (full.feasible()) CHECK(dense_problem(A, b).residuals(full.x).second < 1e-9);

    const Matrix As = A.topLeftCorner(6, 10);
    const Vector bs = b.head(6);
    const auto sub = solve_feasibility(dense_problem(As, bs));
    const bool oracle = oracles::vertex_feasible(As, bs);
    CHECK(sub.feasible() == oracle);
    (oracle ? feasible : infeasible)++;
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("Hurwitz LP test on fixed matrices") {
  const auto one = is_hurwitz_metzler(Matrix{{-1.0}});
  CHECK(one.hurwitz);
  CHECK(one.v[0] >= 1.0);
  CHECK_FALSE(is_hurwitz_metzler(Matrix{{-2, 4}, {4, -2}}).hurwitz);
  CHECK(is_hurwitz_metzler(Matrix{{-2, 1}, {1, -2}}).hurwitz);
  CHECK_FALSE(is_hurwitz_metzler(Matrix{{0.0}}).hurwitz);
  CHECK_THROWS_AS(is_hurwitz_metzler(Matrix{{-1, -1}, {0, -1}}), PreconditionError);
  CHECK(is_metzler(Matrix{{5, 0}, {1, -3}}));
  CHECK_FALSE(is_metzler(Matrix{{0, -1e-3}, {0, 0}}));
}

TEST_CASE("Hurwitz LP test agrees with the characteristic-polynomial oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> scale(0.3, 2.5);
  int compared = 0, stable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int d = dim(rng);
    const Matrix M = fixtures::random_metzler(rng, d, 0.5, scale(rng));
    const double lambda = oracles::pf_by_charpoly(M);
    if (std::abs(lambda) <= 1e-6) continue;
    ++compared;
    const auto t = is_hurwitz_metzler(M);
    CHECK_MESSAGE(t.hurwitz == (lambda < 0.0), "trial " << trial << " lambda " << lambda);
    CHECK(hurwitz_by_pivots(M) == (lambda < 0.0));
    if (t.hurwitz) {
      ++stable;
      CHECK((t.v.array() >= 1.0 - 1e-9).all());
      CHECK((M.transpose() * t.v).maxCoeff() <= -1.0 + 1e-9);
    }
  }
  CHECK(compared > 450);
  CHECK(stable > 50);
  CHECK(compared - stable > 50);
}

TEST_CASE("homogeneous reformulation: strict witnesses scale into the LP form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix M = fixtures::random_metzler(rng, 4, 0.6, 0.8);
    const auto t = is_hurwitz_metzler(M);
    // any v > 0 with v^T M < 0 certifies feasibility after scaling
    Vector v(4);
    for (int i = 0; i < 4; ++i) v[i] = u(rng);
    const Vector g = M.transpose() * v;
    if (g.maxCoeff() < 0.0) {
      const double s = std::max(1.0 / v.minCoeff(), 1.0 / -g.maxCoeff());
      const Vector w = s * v;
      CHECK(w.minCoeff() >= 1.0 - 1e-12);
      CHECK((M.transpose() * w).maxCoeff() <= -1.0 + 1e-12);
      CHECK(t.hurwitz);
    }
    if (t.hurwitz) {
      CHECK(t.v.minCoeff() > 0.0);
      CHECK((M.transpose() * t.v).maxCoeff() < 0.0);
    }
  }
}

TEST_CASE("Perron-Frobenius eigenvalue") {
  CHECK(pf_eigenvalue(Matrix{{-3.0}}) == doctest::Approx(-3.0).epsilon(1e-10));
  CHECK(pf_eigenvalue(Matrix{{-2, 4}, {4, -2}}) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(pf_eigenvalue(Matrix{{-2, 1}, {1, -2}}) == doctest::Approx(-1.0).epsilon(1e-10));

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix M1 = fixtures::random_metzler(rng, 5, 0.4);
    Matrix M2 = M1;
    for (Eigen::Index i = 0; i < M2.size(); ++i) M2.data()[i] += u(rng);
    CHECK(pf_eigenvalue(M1) <= pf_eigenvalue(M2) + 1e-9);
    CHECK(pf_eigenvalue(M1) == doctest::Approx(oracles::pf_by_charpoly(M1)).epsilon(1e-6));
  }
}

TEST_CASE("inverse of a Metzler Hurwitz matrix is nonpositive") {
  Matrix inv;
  CHECK(inverse_nonpositive(Matrix{{-1.0}}, &inv));
  CHECK(inv(0, 0) == doctest::Approx(-1.0));
  CHECK(inverse_nonpositive(Matrix{{-2, 1}, {1, -2}}, &inv));
  const Matrix expected = -(1.0 / 3.0) * Matrix{{2, 1}, {1, 2}};
  CHECK((inv - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), NumericalError);

  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix M = fixtures::random_metzler(rng, 1 + trial % 6, 0.5, 0.6);
    if (!is_hurwitz_metzler(M).hurwitz) continue;
    ++checked;
    CHECK(inverse_nonpositive(M, &inv));
    CHECK((inv * M - Matrix::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK(checked > 50);
}
