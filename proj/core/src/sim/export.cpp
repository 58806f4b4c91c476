#include "ergocert/sim.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace ergocert::sim {

void write_csv(std::ostream& out, const EnsembleStats& stats, const MomentTrajectory* ode) {
  out << "time";
  for (const auto& s : stats.species) out << ',' << s << "_mean";
  for (const auto& s : stats.species) out << ',' << s << "_halfwidth";
  if (ode)
    for (const auto& s : stats.species) out << ',' << s << "_ode";
  out << '\n' << std::setprecision(17);
  for (std::size_t g = 0; g < stats.grid.size(); ++g) {
    const auto r = static_cast<Eigen::Index>(g);
    out << stats.grid[g];
    for (Eigen::Index s = 0; s < stats.mean.cols(); ++s) out << ',' << stats.mean(r, s);
    for (Eigen::Index s = 0; s < stats.mean.cols(); ++s) out << ',' << stats.half_width(r, s);
    if (ode) {
      // ode rows are matched by time; grid times missing from the ODE output are left empty
      auto it = std::find(ode->times.begin(), ode->times.end(), stats.grid[g]);
      for (Eigen::Index s = 0; s < stats.mean.cols(); ++s) {
        out << ',';
        if (it != ode->times.end() && s < ode->means.cols()) out << ode->means(it - ode->times.begin(), s);
      }
    }
    out << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t, const std::vector<std::string>& species) {
  out << "time";
  for (const auto& s : species) out << ',' << s;
  out << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    out << t.times[i];
    for (long long x : t.states[i]) out << ',' << x;
    out << '\n';
  }
}

std::string summary_json(const EnsembleStats& stats, const std::map<std::string, std::string>& meta,
                         std::optional<std::pair<int, double>> target) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  j["meta"] = m;
  j["trajectories"] = stats.n;
  j["t_end"] = stats.grid.empty() ? 0.0 : stats.grid.back();
  j["grid_points"] = stats.grid.size();
  nlohmann::ordered_json term = nlohmann::ordered_json::object();
  for (std::size_t s = 0; s < stats.species.size(); ++s) {
    const auto i = static_cast<Eigen::Index>(s);
    term[stats.species[s]] = {{"mean", stats.terminal_mean[i]}, {"half_width", stats.terminal_half_width[i]}};
  }
  j["terminal_window_mean"] = term;
  if (target) {
    const auto [idx, setpoint] = *target;
    const double mean = stats.terminal_mean[idx];
    j["tracking"] = {{"species", stats.species.at(idx)},
                     {"setpoint", setpoint},
                     {"terminal_mean", mean},
                     {"half_width", stats.terminal_half_width[idx]},
                     {"absolute_error", std::abs(mean - setpoint)},
                     {"relative_error", std::abs(mean - setpoint) / std::abs(setpoint)}};
  }
  return j.dump(2);
}

}  // namespace ergocert::sim
