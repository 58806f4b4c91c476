#include "cli.hpp"

#include "ergocert/error.hpp"

#include <iostream>

namespace ergocert::cli {

int run_verify(const VerifyConfig& cfg) {
  std::vector<analysis::Certificate> certs;
  try {
    certs = analysis::certificates_from_report(read_file(cfg.certificate));
  } catch (const PreconditionError& e) {
    throw InputError(cfg.certificate.string() + ": " + e.what());
  }
  const auto p = load_problem(cfg.network);
  if (certs.empty()) throw InputError(cfg.certificate.string() + ": no certificates");

  bool ok = true;
  for (const auto& c : certs) {
    const auto r = analysis::verify(c, p, cfg.tol);
    std::cout << (r.ok ? "ok    " : "FAIL  ") << analysis::to_string(c.framework) << ' '
              << analysis::to_string(c.property) << ' ' << analysis::to_string(c.verdict) << ": " << r.message;
    if (c.holds()) std::cout << " (residual " << r.residual << ")";
    std::cout << '\n';
    ok &= r.ok;
  }
  return ok ? kHolds : kFails;
}

}  // namespace ergocert::cli
