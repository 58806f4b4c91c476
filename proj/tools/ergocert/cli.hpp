#pragma once

#include "ergocert/analysis.hpp"
#include "ergocert/model.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ergocert::cli {

// Exit codes; 0..2 mirror the verdict of the run.
enum Exit : int {
  kHolds = 0,
  kFails = 1,
  kUnknown = 2,
  kUsage = 3,
  kInput = 4,         // unreadable file, parse error, malformed JSON
  kPrecondition = 5,  // precondition violated, indeterminate sign pattern
  kSimulation = 6,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ControlFlags {
  std::string actuated;
  std::string controlled;
  double mu = 1.0;
  double theta = 1.0;
  double eta = 1.0;
  double k = 1.0;
};

struct AnalyzeConfig {
  std::filesystem::path network;
  std::string framework = "structural";
  ControlFlags control;
  bool assert_irreducible = false;
  bool lp_trace = false;
  std::filesystem::path out;
};

struct SimulateConfig {
  std::filesystem::path network;
  ControlFlags control;
  std::optional<unsigned long long> seed;
  long n_traj = 1000;
  double t_end = 100.0;
  int grid = 101;
  std::vector<long long> x0;
  std::vector<long long> z0;
  bool ode = false;
  int threads = 0;
  std::string out = "ergocert_sim";
};

struct VerifyConfig {
  std::filesystem::path certificate;
  std::filesystem::path network;
  double tol = 1e-8;
};

struct ReportConfig {
  std::filesystem::path report;
  bool csv = false;
};

int run_analyze(const AnalyzeConfig& cfg);
int run_simulate(const SimulateConfig& cfg);
int run_verify(const VerifyConfig& cfg);
int run_report(const ReportConfig& cfg);

// shared helpers (common.cpp)
std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);
analysis::Problem load_problem(const std::filesystem::path& p);
/// Species by name or 1-based index.
int resolve_species(const model::ReactionNetwork& net, const std::string& token);
std::optional<analysis::ControlSpec> control_spec(const model::ReactionNetwork& net, const ControlFlags& f);
/// Version, network path and SHA-256 of the file bytes.
std::map<std::string, std::string> base_meta(const std::string& command, const std::filesystem::path& network);
std::string format_double(double x);
int exit_for(const std::vector<analysis::Certificate>& certs);

}  // namespace ergocert::cli
