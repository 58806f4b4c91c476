#include "doctest.h"

#include "ergocert/error.hpp"
#include "ergocert/sim.hpp"
#include "fixtures.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>

using namespace ergocert;
using namespace ergocert::sim;

namespace {

model::ReactionNetwork net(const std::string& text) { return model::parse_network(text); }

EnsembleOptions threads(int n) {
  EnsembleOptions o;
  o.threads = n;
  return o;
}

}  // namespace

TEST_CASE("propensities follow mass action without symmetry factors") {
  const auto n = net("2 X1 -> X2 @ a\nX1 + X2 -> 0 @ b\n0 -> X1 @ c\na = 1\nb = 1\nc = 1\n");
  CHECK(propensity(n.reactions[0], 0.5, {4, 0}) == 0.5 * 4 * 3);
  CHECK(propensity(n.reactions[0], 0.5, {1, 0}) == 0.0);
  CHECK(propensity(n.reactions[1], 2.0, {3, 5}) == 30.0);
  CHECK(propensity(n.reactions[2], 1.5, {0, 0}) == 1.5);
}

TEST_CASE("a state with zero propensity stays put") {
  const auto n = net("X1 -> 0 @ a\na = 1\n");
  const auto t = ssa_run(n, {0}, 10.0, 1);
  CHECK(t.times.size() == 1);
  CHECK(t.at(5.0) == State{0});
  CHECK(t.at(10.0) == State{0});

  const auto stats = ensemble_means(n, {0}, 10.0, 64, uniform_grid(10.0, 11), 3, threads(2));
  CHECK(stats.variance.cwiseAbs().maxCoeff() == 0.0);
  CHECK(stats.mean.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("trajectories are reproducible and left-constant") {
  const auto n = fixtures::load("birth_death.net").net;
  const auto a = ssa_run(n, {0}, 20.0, 42);
  const auto b = ssa_run(n, {0}, 20.0, 42);
  CHECK(a.times == b.times);
  CHECK(a.states == b.states);
  REQUIRE(a.times.size() > 3);
  const double t1 = a.times[1], t2 = a.times[2];
  CHECK(a.at(t1) == a.states[1]);
  CHECK(a.at(0.5 * (t1 + t2)) == a.states[1]);
  CHECK(a.at(std::nextafter(t1, 0.0)) == a.states[0]);
  CHECK(ssa_run(n, {0}, 20.0, 43).times != a.times);

  const auto grid = uniform_grid(20.0, 21);
  const auto g = ssa_on_grid(n, {0}, 20.0, grid, 42);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(g[i] == a.at(grid[i]));
  CHECK(trajectory_seed(1, 0) != trajectory_seed(1, 1));
  CHECK(trajectory_seed(1, 5) == trajectory_seed(1, 5));
}

TEST_CASE("pure birth: jump count is Poisson with mean T") {
  const auto n = net("0 -> X1 @ a\na = 1\n");
  const double T = 100.0;
  const long N = 2000;
  double total = 0.0;
  for (long i = 0; i < N; ++i) total += static_cast<double>(ssa_run(n, {0}, T, trajectory_seed(9, i)).states.back()[0]);
  CHECK(std::abs(total / N - T) <= 3.0 * std::sqrt(T / N) * 3.0);
}

TEST_CASE("birth-death occupancy approaches Poisson(2)") {
  const auto n = fixtures::load("birth_death.net").net;
  const long N = 2000;
  std::vector<double> counts(20, 0.0);
  double mean = 0.0;
  for (long i = 0; i < N; ++i) {
    const long long x = ssa_on_grid(n, {0}, 50.0, {50.0}, trajectory_seed(17, i))[0][0];
    mean += static_cast<double>(x) / N;
    if (x < 20) counts[x] += 1.0;
  }
  CHECK(std::abs(mean - 2.0) < 4.0 * std::sqrt(2.0 / N));
  double pk = std::exp(-2.0);
  for (int k = 0; k < 8; ++k) {
    const double sd = std::sqrt(pk * (1.0 - pk) / N);
    CHECK_MESSAGE(std::abs(counts[k] / N - pk) < 4.0 * sd + 1e-3, "k = " << k);
    pk *= 2.0 / (k + 1);
  }
}

TEST_CASE("ensemble statistics do not depend on the thread count") {
  const auto n = fixtures::load("birth_death.net").net;
  const auto grid = uniform_grid(10.0, 11);
  const auto one = ensemble_means(n, {1}, 10.0, 200, grid, 5, threads(1));
  const auto three = ensemble_means(n, {1}, 10.0, 200, grid, 5, threads(3));
  CHECK(one.mean == three.mean);
  CHECK(one.variance == three.variance);
  CHECK(one.terminal_mean == three.terminal_mean);
  CHECK(one.n == 200);
  CHECK(one.species == std::vector<std::string>{"X1"});
}

TEST_CASE("doubling the ensemble halves the variance of the mean") {
  const auto n = fixtures::load("birth_death.net").net;
  const auto grid = uniform_grid(20.0, 5);
  double small = 0.0, large = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const auto a = ensemble_means(n, {0}, 20.0, 200, grid, 100 + rep, threads(2));
    const auto b = ensemble_means(n, {0}, 20.0, 400, grid, 200 + rep, threads(2));
    small += a.half_width(4, 0) * a.half_width(4, 0);
    large += b.half_width(4, 0) * b.half_width(4, 0);
  }
  const double ratio = small / large;
  CHECK(ratio > 1.0);
  CHECK(ratio < 4.0);
}

TEST_CASE("closed-loop construction") {
  const auto base = fixtures::load("birth_death.net").net;
  analysis::ControlSpec cs;
  cs.mu = 3.0;
  const auto cl = build_closed_loop(base, cs);
  CHECK(cl.network.species == std::vector<std::string>{"X1", "Z1", "Z2"});
  CHECK(cl.network.K() == base.K() + 4);
  CHECK(cl.network.domain("ctl_mu") == model::Domain::fixed(3.0));
  CHECK(cl.network.reactions.back().products == model::Complex{{0, 1}, {1, 1}});

  const auto clash = net("0 -> Z1 @ ctl_mu\nZ1 -> 0 @ d\nctl_mu = 1\nd = 1\n");
  const auto cl2 = build_closed_loop(clash, cs);
  CHECK(cl2.network.species[cl2.z1] == "Z1_2");
  CHECK(cl2.network.domains.count("ctl_mu_2") == 1);
  CHECK_NOTHROW(model::parse_network(model::to_source(cl2.network)));
  cs.controlled = 4;
  CHECK_THROWS_AS(build_closed_loop(base, cs), PreconditionError);
}

TEST_CASE("closed loop drives the controlled species to mu / theta") {
  const auto base = fixtures::load("birth_death.net").net;
  analysis::ControlSpec cs;
  cs.mu = 3.0;
  const auto cl = build_closed_loop(base, cs);
  const double T = 100.0;
  const auto stats = ensemble_means(cl.network, {0, 0, 0}, T, 300, uniform_grid(T, 101), 77, threads(2));
  CHECK(std::abs(stats.terminal_mean[0] - 3.0) < std::max(0.3, 3.0 * stats.terminal_half_width[0]));
}

TEST_CASE("simulation errors") {
  const auto boom = net("X1 -> 2 X1 @ a\na = 1\n");
  SsaOptions o;
  o.max_jumps = 1000;
  CHECK_THROWS_AS(ssa_run(boom, {1}, 1e6, 1, o), SimulationError);
  CHECK_THROWS_AS(fixed_rates(fixtures::load("four_species.net").net), PreconditionError);
  CHECK_THROWS_AS(ssa_run(boom, {-1}, 1.0, 1), PreconditionError);
}

TEST_CASE("moment ODE") {
  const std::vector<double> times{0.0, 0.5, 1.0, 2.0};
  const auto m = moment_ode(Eigen::MatrixXd{{-1.0}}, Eigen::VectorXd{{1.0}}, Eigen::VectorXd{{0.0}}, 2.0, times);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(m.means(static_cast<Eigen::Index>(i), 0) == doctest::Approx(1.0 - std::exp(-times[i])).epsilon(1e-10));
  CHECK(m.times == times);

  const auto z = moment_ode(Eigen::MatrixXd{{-1, 0}, {1, -2}}, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), 5.0,
                            {0.0, 5.0});
  CHECK(z.means.cwiseAbs().maxCoeff() == 0.0);

  // equilibrium against the SSA ensemble
  const auto n = net("0 -> X1 @ b\nX1 -> X2 @ c\nX1 -> 0 @ d1\nX2 -> 0 @ d2\nb = 4\nc = 1\nd1 = 1\nd2 = 0.5\n");
  const double T = 30.0;
  const auto ode = moment_ode(n, {0, 0}, T, {T});
  CHECK(ode.means(0, 0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(ode.means(0, 1) == doctest::Approx(4.0).epsilon(1e-6));
  const auto stats = ensemble_means(n, {0, 0}, T, 1000, uniform_grid(T, 31), 8, threads(2));
  for (int s = 0; s < 2; ++s) CHECK(std::abs(stats.mean(30, s) - ode.means(0, s)) < 3.0 * stats.half_width(30, s));

  CHECK_THROWS_AS(moment_ode(fixtures::load("sir.net").net, {1, 1, 0}, 1.0, {1.0}), PreconditionError);
}

TEST_CASE("exports") {
  const auto n = fixtures::load("birth_death.net").net;
  const auto grid = uniform_grid(4.0, 5);
  const auto stats = ensemble_means(n, {0}, 4.0, 40, grid, 1, threads(1));
  const auto ode = moment_ode(n, {0}, 4.0, grid);
  std::ostringstream csv;
  write_csv(csv, stats, &ode);
  std::istringstream in(csv.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "time,X1_mean,X1_halfwidth,X1_ode");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 5);

  const auto j = nlohmann::json::parse(summary_json(stats, {{"seed", "1"}}, std::pair<int, double>{0, 2.0}));
  CHECK(j["meta"]["seed"] == "1");
  CHECK(j["trajectories"] == 40);
  CHECK(j["tracking"]["setpoint"] == 2.0);

  std::ostringstream traj;
  write_trajectory_csv(traj, ssa_run(n, {0}, 1.0, 3), n.species);
  CHECK(traj.str().rfind("time,X1\n0,0\n", 0) == 0);
}
