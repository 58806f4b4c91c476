#include "cli.hpp"

#include "ergocert/error.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

namespace ergocert::cli {

namespace {

using analysis::Certificate;
using analysis::Framework;
using analysis::Property;

std::string vec(const analysis::Vector& v) {
  std::ostringstream os;
  os.precision(6);
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str() + ']';
}

void print(std::ostream& os, const Certificate& c) {
  std::string verdict = analysis::to_string(c.verdict);
  for (auto& ch : verdict) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  os << std::left << std::setw(11) << analysis::to_string(c.framework) << std::setw(25)
     << analysis::to_string(c.property) << verdict << '\n';
  if (c.v) os << "    v = " << vec(*c.v) << '\n';
  if (c.w) os << "    w = " << vec(*c.w) << '\n';
  if (c.mu_shift && *c.mu_shift != 0.0) os << "    mu shift = " << *c.mu_shift << '\n';
  if (c.setpoint_bound) os << "    set-point bound on mu/theta = " << *c.setpoint_bound << '\n';
  if (!c.counterexample.empty()) os << "    counterexample: " << c.counterexample << '\n';
  for (const auto& cv : c.caveats) os << "    caveat: " << cv << '\n';
}

std::string sign_pattern_message(const SignPatternError& e, const std::vector<std::string>& species) {
  std::ostringstream os;
  os << e.what() << " (";
  bool first = true;
  for (const auto& [i, j] : e.entries()) {
    os << (first ? "" : ", ") << "row " << species.at(i) << ", column " << species.at(j);
    first = false;
  }
  os << ")";
  return os.str();
}

int table(const analysis::Problem& p, const std::optional<analysis::ControlSpec>& spec,
          const analysis::AnalysisOptions& opts, std::vector<Certificate>& all,
          std::map<std::string, std::string>& meta) {
  std::vector<Property> rows{Property::Ergodicity};
  if (spec) {
    rows.push_back(Property::OutputControllability);
    rows.push_back(Property::AIC);
  }
  std::map<std::pair<int, int>, std::string> cell;
  std::vector<std::string> notes;
  int ran = 0;
  for (int fi = 0; fi < 5; ++fi) {
    const Framework f = analysis::kAllFrameworks[fi];
    try {
      for (const auto& c : analysis::analyze(p, f, spec, opts)) {
        const int r = c.property == Property::OutputControllability ? 1 : c.property == Property::AIC ? 2 : 0;
        cell[{r, fi}] = analysis::to_string(c.verdict);
        all.push_back(c);
      }
      ++ran;
    } catch (const SignPatternError& e) {
      notes.push_back(std::string(analysis::to_string(f)) + ": " + sign_pattern_message(e, p.cm.species));
    } catch (const PreconditionError& e) {
      notes.push_back(std::string(analysis::to_string(f)) + ": " + e.what());
    }
  }
  std::cout << std::left << std::setw(25) << "property";
  for (Framework f : analysis::kAllFrameworks) std::cout << std::setw(12) << analysis::to_string(f);
  std::cout << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::cout << std::setw(25) << (r == 0 && p.cm.bimolecular() ? "ergodicity-bimolecular" : analysis::to_string(rows[r]));
    for (int fi = 0; fi < 5; ++fi) {
      auto it = cell.find({static_cast<int>(r), fi});
      std::cout << std::setw(12) << (it == cell.end() ? "n/a" : it->second);
    }
    std::cout << '\n';
  }
  for (std::size_t i = 0; i < notes.size(); ++i) {
    std::cout << "n/a " << notes[i] << '\n';
    meta["skipped_" + std::to_string(i + 1)] = notes[i];
  }
  std::cout << '\n';
  for (const auto& c : all) print(std::cout, c);
  if (ran == 0) return kPrecondition;
  return exit_for(all);
}

}  // namespace

int run_analyze(const AnalyzeConfig& cfg) {
  const auto p = load_problem(cfg.network);
  const auto spec = control_spec(p.net, cfg.control);

  analysis::AnalysisOptions opts;
  opts.assert_irreducible = cfg.assert_irreducible;
  if (cfg.lp_trace) opts.robust.lp.trace = &std::cerr;

  auto meta = base_meta("analyze", cfg.network);
  meta["framework"] = cfg.framework;
  meta["assert_irreducible"] = cfg.assert_irreducible ? "true" : "false";
  meta["network_hash"] = p.hash;
  if (spec) {
    meta["actuated"] = p.net.species[spec->actuated];
    meta["controlled"] = p.net.species[spec->controlled];
    meta["mu"] = format_double(spec->mu);
    meta["theta"] = format_double(spec->theta);
    meta["eta"] = format_double(spec->eta);
    meta["k"] = format_double(spec->k);
  }

  std::vector<Certificate> certs;
  int code = kHolds;
  if (cfg.framework == "all") {
    code = table(p, spec, opts, certs, meta);
  } else {
    const Framework f = analysis::parse_framework(cfg.framework);
    try {
      certs = analysis::analyze(p, f, spec, opts);
    } catch (const SignPatternError& e) {
      throw PreconditionError(sign_pattern_message(e, p.cm.species));
    }
    for (const auto& c : certs) print(std::cout, c);
    code = exit_for(certs);
  }
  if (!cfg.out.empty()) write_file(cfg.out, analysis::report_json(certs, meta) + "\n");
  return code;
}

}  // namespace ergocert::cli
