#pragma once

// Antithetic closed-loop construction, Gillespie simulation, ensemble
// statistics and the first-moment ODE of unimolecular networks.

#include "ergocert/analysis.hpp"
#include "ergocert/model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ergocert::sim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using State = std::vector<long long>;

struct ClosedLoopNetwork {
  model::ReactionNetwork base;
  analysis::ControlSpec controller;
  model::ReactionNetwork network;  // base species, then Z1 and Z2; base reactions, then the four controller ones
  int z1 = -1;
  int z2 = -1;
};

/// Appends Z1, Z2 and  0 -> Z1 @ mu,  X_l -> X_l + Z2 @ theta,  Z1 + Z2 -> 0 @ eta,
/// Z1 -> Z1 + X_a @ k. Names that collide with existing ones get a numeric suffix.
ClosedLoopNetwork build_closed_loop(const model::ReactionNetwork& net, const analysis::ControlSpec& spec);

/// Rate values when every rate is fixed (or a degenerate interval).
std::vector<double> fixed_rates(const model::ReactionNetwork& net);

/// Mass-action propensity rho * prod x_i! / (x_i - z_i)!.
double propensity(const model::Reaction& r, double rate, const State& x);

struct Trajectory {
  std::vector<double> times;  // times[0] = 0
  std::vector<State> states;  // state right after each jump
  double t_end = 0.0;
  std::uint64_t seed = 0;

  /// Left-constant value at time t.
  const State& at(double t) const;
};

struct SsaOptions {
  long long max_jumps = 500'000'000;
};

/// Direct method; bit-reproducible for a given seed.
Trajectory ssa_run(const model::ReactionNetwork& net, const State& x0, double t_end, std::uint64_t seed,
                   const SsaOptions& opts = {});

/// Same process, recorded only at the grid times (sorted, within [0, t_end]).
std::vector<State> ssa_on_grid(const model::ReactionNetwork& net, const State& x0, double t_end,
                               const std::vector<double>& grid, std::uint64_t seed, const SsaOptions& opts = {});

/// Seed of trajectory `index` in an ensemble (splitmix64 of base + index).
std::uint64_t trajectory_seed(std::uint64_t base_seed, std::uint64_t index);

struct EnsembleStats {
  std::vector<double> grid;
  std::vector<std::string> species;
  Matrix mean;        // grid x species
  Matrix variance;    // sample variance across trajectories
  Matrix half_width;  // 1.96 sigma / sqrt(N)
  long n = 0;
  // time average over the last 20% of the grid, per trajectory, then across trajectories
  Vector terminal_mean;
  Vector terminal_half_width;
};

struct EnsembleOptions {
  int threads = 0;  // 0: ERGOCERT_THREADS or hardware concurrency
  SsaOptions ssa;
};

EnsembleStats ensemble_means(const model::ReactionNetwork& net, const State& x0, double t_end, long n,
                             const std::vector<double>& grid, std::uint64_t base_seed, const EnsembleOptions& opts = {});

/// Evenly spaced grid with `points` entries from 0 to t_end.
std::vector<double> uniform_grid(double t_end, int points);

struct MomentTrajectory {
  std::vector<double> times;
  Matrix means;  // times x d
};

/// RK4 on dm/dt = A m + b0 with step 1e-3 t_end, landing exactly on the report times.
MomentTrajectory moment_ode(const Matrix& A, const Vector& b0, const Vector& m0, double t_end,
                            const std::vector<double>& report_times);
/// Network form: fixed rates, no bimolecular reactions.
MomentTrajectory moment_ode(const model::ReactionNetwork& net, const State& x0, double t_end,
                            const std::vector<double>& report_times);

// ---------------------------------------------------------------------------
// export

void write_csv(std::ostream& out, const EnsembleStats& stats, const MomentTrajectory* ode = nullptr);
void write_trajectory_csv(std::ostream& out, const Trajectory& t, const std::vector<std::string>& species);
/// JSON summary; meta entries are copied verbatim, target adds the tracking error of the controlled species.
std::string summary_json(const EnsembleStats& stats, const std::map<std::string, std::string>& meta,
                         std::optional<std::pair<int, double>> target = std::nullopt);

}  // namespace ergocert::sim
