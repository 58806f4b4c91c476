#include "ergocert/error.hpp"
#include "ergocert/sim.hpp"

#include <algorithm>

namespace ergocert::sim {

namespace {

bool taken(const model::ReactionNetwork& net, const std::string& name) {
  if (net.species_index(name) >= 0) return true;
  return net.domains.count(name) > 0;
}

std::string fresh(const model::ReactionNetwork& net, const std::string& want) {
  if (!taken(net, want)) return want;
  for (int i = 2;; ++i) {
    const std::string name = want + "_" + std::to_string(i);
    if (!taken(net, name)) return name;
  }
}

}  // namespace

ClosedLoopNetwork build_closed_loop(const model::ReactionNetwork& net, const analysis::ControlSpec& spec) {
  spec.validate(net.d());
  ClosedLoopNetwork cl;
  cl.base = net;
  cl.controller = spec;
  auto& out = cl.network;
  out = net;

  const std::string z1 = fresh(out, "Z1");
  out.species.push_back(z1);
  const std::string z2 = fresh(out, "Z2");
  out.species.push_back(z2);
  cl.z1 = out.d() - 2;
  cl.z2 = out.d() - 1;

  auto add = [&](model::Complex lhs, model::Complex rhs, const std::string& want, double value) {
    const std::string rate = fresh(out, want);
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    out.reactions.push_back({std::move(lhs), std::move(rhs), rate, 0});
    out.domains[rate] = model::Domain::fixed(value);
  };
  const int l = spec.controlled;
  const int a = spec.actuated;
  add({}, {{cl.z1, 1}}, "ctl_mu", spec.mu);
  add({{l, 1}}, {{l, 1}, {cl.z2, 1}}, "ctl_theta", spec.theta);
  add({{cl.z1, 1}, {cl.z2, 1}}, {}, "ctl_eta", spec.eta);
  add({{cl.z1, 1}}, {{a, 1}, {cl.z1, 1}}, "ctl_k", spec.k);
  return cl;
}

std::vector<double> fixed_rates(const model::ReactionNetwork& net) {
  std::vector<double> out;
  out.reserve(net.reactions.size());
  for (const auto& r : net.reactions) {
    const auto& dom = net.domain(r.rate);
    const bool point = dom.kind == model::Domain::Kind::Fixed ||
                       (dom.kind == model::Domain::Kind::Interval && dom.lo == dom.hi);
    if (!point) throw PreconditionError("simulation needs a fixed value for rate '" + r.rate + "'");
    out.push_back(dom.lo);
  }
  return out;
}

}  // namespace ergocert::sim
