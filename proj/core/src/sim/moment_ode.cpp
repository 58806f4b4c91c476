#include "ergocert/error.hpp"
#include "ergocert/sim.hpp"

#include <algorithm>
#include <cmath>

namespace ergocert::sim {

MomentTrajectory moment_ode(const Matrix& A, const Vector& b0, const Vector& m0, double t_end,
                            const std::vector<double>& report_times) {
  const Eigen::Index d = A.rows();
  if (A.cols() != d || b0.size() != d || m0.size() != d) throw PreconditionError("moment ODE: dimension mismatch");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw PreconditionError("moment ODE: t_end must be positive");
  std::vector<double> stops = report_times;
  for (double t : stops)
    if (t < 0.0 || t > t_end) throw PreconditionError("moment ODE: report time outside [0, t_end]");
  stops.push_back(t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  const double h = 1e-3 * t_end;
  auto f = [&](const Vector& m) -> Vector { return A * m + b0; };

  MomentTrajectory out;
  out.means.resize(static_cast<Eigen::Index>(stops.size()), d);
  Vector m = m0;
  double t = 0.0;
  for (std::size_t s = 0; s < stops.size(); ++s) {
    while (t < stops[s]) {
      const double step = std::min(h, stops[s] - t);
      const Vector k1 = f(m);
      const Vector k2 = f(m + 0.5 * step * k1);
      const Vector k3 = f(m + 0.5 * step * k2);
      const Vector k4 = f(m + step * k3);
      m += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      // land exactly; avoid a sliver step from rounding
      t = stops[s] - t - step < 1e-12 * t_end ? stops[s] : t + step;
    }
    out.times.push_back(stops[s]);
    out.means.row(static_cast<Eigen::Index>(s)) = m.transpose();
  }
  return out;
}

MomentTrajectory moment_ode(const model::ReactionNetwork& net, const State& x0, double t_end,
                            const std::vector<double>& report_times) {
  const auto dec = model::decompose(net);
  if (!dec.sb.empty()) throw PreconditionError("moment ODE needs a network without bimolecular reactions");
  const auto cm = model::characteristic_model(dec);
  const auto rates = fixed_rates(net);
  std::map<std::string, double> values;
  for (int k = 0; k < net.K(); ++k) values[net.reactions[k].rate] = rates[k];
  Vector m0(net.d());
  for (int i = 0; i < net.d(); ++i) m0[i] = static_cast<double>(x0.at(i));
  return moment_ode(cm.A.evaluate(values), cm.b0.evaluate(values).col(0), m0, t_end, report_times);
}

}  // namespace ergocert::sim
