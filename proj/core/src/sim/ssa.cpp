#include "ergocert/error.hpp"
#include "ergocert/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ergocert::sim {

double propensity(const model::Reaction& r, double rate, const State& x) {
  double a = rate;
  for (const auto& [s, n] : r.reactants) {
    const long long xi = x[s];
    for (int j = 0; j < n; ++j) a *= static_cast<double>(xi - j);
    if (xi < n) return 0.0;
  }
  return a;
}

const State& Trajectory::at(double t) const {
  // last jump with time <= t
  auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto idx = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
  return states[idx];
}

std::uint64_t trajectory_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t z = base_seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct Channel {
  const model::Reaction* reaction;
  double rate;
  std::vector<std::pair<int, long long>> change;
};

class Engine {
 public:
  Engine(const model::ReactionNetwork& net, const State& x0, std::uint64_t seed, const SsaOptions& opts)
      : x_(x0), gen_(seed), opts_(opts) {
    if (static_cast<int>(x0.size()) != net.d()) throw PreconditionError("initial state has wrong length");
    for (long long v : x0)
      if (v < 0) throw PreconditionError("initial state must be nonnegative");
    const auto rates = fixed_rates(net);
    for (int k = 0; k < net.K(); ++k) {
      Channel c{&net.reactions[k], rates[k], {}};
      const Eigen::VectorXi s = net.stoichiometry(k);
      for (int i = 0; i < s.size(); ++i)
        if (s[i] != 0) c.change.emplace_back(i, s[i]);
      channels_.push_back(std::move(c));
    }
    props_.resize(channels_.size());
  }

  const State& state() const { return x_; }

  // Time to the next jump (infinity when every propensity vanishes); the jump is applied by fire().
  double next() {
    double a0 = 0.0;
    for (std::size_t k = 0; k < channels_.size(); ++k) {
      double a = propensity(*channels_[k].reaction, channels_[k].rate, x_);
      for (const auto& [i, dz] : channels_[k].change)
        if (x_[i] + dz < 0) a = 0.0;
      props_[k] = a;
      a0 += a;
    }
    if (!std::isfinite(a0) || a0 > 1e300) throw SimulationError("propensity overflow", x_);
    a0_ = a0;
    if (a0 <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-uniform()) / a0;
  }

  void fire() {
    if (++jumps_ > opts_.max_jumps) throw SimulationError("jump budget exhausted", x_);
    const double target = uniform() * a0_;
    double acc = 0.0;
    std::size_t k = 0;
    for (; k + 1 < channels_.size(); ++k) {
      acc += props_[k];
      if (target < acc && props_[k] > 0.0) break;
    }
    while (props_[k] <= 0.0) --k;  // rounding left us past the last live channel
    for (const auto& [i, dz] : channels_[k].change) {
      x_[i] += dz;
      if (x_[i] < 0) throw SimulationError("negative count", x_);
      if (x_[i] > (1LL << 53)) throw SimulationError("count overflow", x_);
    }
  }

 private:
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  State x_;
  std::mt19937_64 gen_;
  SsaOptions opts_;
  std::vector<Channel> channels_;
  std::vector<double> props_;
  double a0_ = 0.0;
  long long jumps_ = 0;
};

}  // namespace

Trajectory ssa_run(const model::ReactionNetwork& net, const State& x0, double t_end, std::uint64_t seed,
                   const SsaOptions& opts) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw PreconditionError("t_end must be finite and nonnegative");
  Engine eng(net, x0, seed, opts);
  Trajectory tr;
  tr.seed = seed;
  tr.t_end = t_end;
  tr.times.push_back(0.0);
  tr.states.push_back(x0);
  double t = 0.0;
  for (;;) {
    const double dt = eng.next();
    if (!(t + dt <= t_end)) break;
    t += dt;
    eng.fire();
    tr.times.push_back(t);
    tr.states.push_back(eng.state());
  }
  return tr;
}

std::vector<State> ssa_on_grid(const model::ReactionNetwork& net, const State& x0, double t_end,
                               const std::vector<double>& grid, std::uint64_t seed, const SsaOptions& opts) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw PreconditionError("t_end must be finite and nonnegative");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] < 0.0 || grid[i] > t_end || (i && grid[i] < grid[i - 1]))
      throw PreconditionError("grid must be sorted within [0, t_end]");
  Engine eng(net, x0, seed, opts);
  std::vector<State> out;
  out.reserve(grid.size());
  std::size_t g = 0;
  double t = 0.0;
  while (g < grid.size()) {
    const double t_next = t + eng.next();
    while (g < grid.size() && grid[g] < t_next) {
      out.push_back(eng.state());
      ++g;
    }
    if (g == grid.size() || t_next > t_end) break;
    t = t_next;
    eng.fire();
  }
  while (out.size() < grid.size()) out.push_back(eng.state());
  return out;
}

}  // namespace ergocert::sim
