#include "cli.hpp"

#include "ergocert/error.hpp"
#include "ergocert/hash.hpp"
#include "ergocert/version.hpp"

#include <fstream>
#include <sstream>

namespace ergocert::cli {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot open '" + p.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write '" + p.string() + "'");
  out << text;
  if (!out) throw InputError("write to '" + p.string() + "' failed");
}

analysis::Problem load_problem(const std::filesystem::path& p) {
  return analysis::Problem::from(model::parse_network(read_file(p)));
}

int resolve_species(const model::ReactionNetwork& net, const std::string& token) {
  const int i = net.species_index(token);
  if (i >= 0) return i;
  try {
    std::size_t used = 0;
    const int k = std::stoi(token, &used);
    if (used == token.size() && k >= 1 && k <= net.d()) return k - 1;
  } catch (const std::exception&) {
  }
  throw UsageError("unknown species '" + token + "'");
}

std::optional<analysis::ControlSpec> control_spec(const model::ReactionNetwork& net, const ControlFlags& f) {
  if (f.controlled.empty()) return std::nullopt;
  analysis::ControlSpec s;
  s.actuated = f.actuated.empty() ? 0 : resolve_species(net, f.actuated);
  s.controlled = resolve_species(net, f.controlled);
  s.mu = f.mu;
  s.theta = f.theta;
  s.eta = f.eta;
  s.k = f.k;
  return s;
}

std::map<std::string, std::string> base_meta(const std::string& command, const std::filesystem::path& network) {
  return {{"tool", "ergocert"},
          {"version", version()},
          {"command", command},
          {"network", network.string()},
          {"network_sha256", sha256_file(network)}};
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

int exit_for(const std::vector<analysis::Certificate>& certs) {
  bool unknown = false;
  for (const auto& c : certs) {
    if (c.verdict == analysis::Verdict::Fails) return kFails;
    unknown |= c.verdict == analysis::Verdict::Unknown;
  }
  return unknown ? kUnknown : kHolds;
}

}  // namespace ergocert::cli
