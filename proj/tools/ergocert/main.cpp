#include "cli.hpp"

#include "ergocert/error.hpp"
#include "ergocert/version.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace ergocert;
using namespace ergocert::cli;

namespace {

void add_control(CLI::App* app, ControlFlags& c) {
  app->add_option("--actuated", c.actuated, "Actuated species (name or 1-based index; default: first species)");
  app->add_option("--controlled", c.controlled, "Controlled species; enables the controller");
  app->add_option("--mu", c.mu, "Reference rate mu")->check(CLI::PositiveNumber);
  app->add_option("--theta", c.theta, "Measurement rate theta")->check(CLI::PositiveNumber);
  app->add_option("--eta", c.eta, "Comparison rate eta")->check(CLI::PositiveNumber);
  app->add_option("--k", c.k, "Actuation rate k")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify ergodicity, output controllability and antithetic integral control of reaction networks"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  AnalyzeConfig an;
  auto* analyze = app.add_subcommand("analyze", "Run a certification framework on a network");
  analyze->add_option("network", an.network, "Network file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--framework", an.framework, "Uncertainty model")
      ->check(CLI::IsMember({"nominal", "interval", "robust", "sign", "structural", "all"}))
      ->capture_default_str();
  add_control(analyze, an.control);
  analyze->add_flag("--assert-irreducible", an.assert_irreducible,
                    "Record that the closed-loop state space is irreducible");
  analyze->add_flag("--lp-trace", an.lp_trace, "Dump simplex tableaux to stderr");
  analyze->add_option("--out", an.out, "Write the certificate report (JSON) here");

  SimulateConfig sm;
  unsigned long long seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Gillespie ensemble, open or closed loop");
  simulate->add_option("network", sm.network, "Network file (all rates fixed)")->required()->check(CLI::ExistingFile);
  add_control(simulate, sm.control);
  simulate->add_option("--seed", seed, "Base seed of the ensemble")->required();
  simulate->add_option("--n-traj", sm.n_traj, "Number of trajectories")->capture_default_str();
  simulate->add_option("--t-end", sm.t_end, "Horizon")->capture_default_str();
  simulate->add_option("--grid", sm.grid, "Number of equally spaced report times")->capture_default_str();
  simulate->add_option("--x0", sm.x0, "Initial counts of the network species")->delimiter(',');
  simulate->add_option("--z0", sm.z0, "Initial counts of Z1,Z2 (default 0,0)")->delimiter(',');
  simulate->add_flag("--ode", sm.ode, "Add the first-moment ODE solution to the CSV");
  simulate->add_option("--threads", sm.threads, "Worker threads (default: ERGOCERT_THREADS or all cores)");
  simulate->add_option("--out", sm.out, "Output prefix for <out>.csv and <out>.json")->capture_default_str();

  VerifyConfig vf;
  auto* verify = app.add_subcommand("verify", "Re-check the witnesses of a certificate report");
  verify->add_option("certificate", vf.certificate, "Certificate or report JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("network", vf.network, "Network file")->required()->check(CLI::ExistingFile);
  verify->add_option("--tol", vf.tol, "Residual tolerance")->capture_default_str();

  ReportConfig rp;
  auto* report = app.add_subcommand("report", "Print a certificate report as text or CSV");
  report->add_option("report", rp.report, "Report JSON")->required()->check(CLI::ExistingFile);
  report->add_flag("--csv", rp.csv, "One CSV row per certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*analyze) return run_analyze(an);
    if (*simulate) {
      sm.seed = seed;
      return run_simulate(sm);
    }
    if (*verify) return run_verify(vf);
    if (*report) return run_report(rp);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInput;
  } catch (const SimulationError& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return kSimulation;
  } catch (const Error& e) {
    // PreconditionError, SignPatternError, NumericalError
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kUsage;
}
