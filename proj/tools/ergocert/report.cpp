#include "cli.hpp"

#include "ergocert/error.hpp"

#include "json.hpp"

#include <iomanip>
#include <iostream>

namespace ergocert::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

int run_report(const ReportConfig& cfg) {
  const std::string text = read_file(cfg.report);
  std::vector<analysis::Certificate> certs;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  try {
    certs = analysis::certificates_from_report(text);
    const auto j = nlohmann::ordered_json::parse(text);
    if (j.is_object() && j.contains("meta")) meta = j["meta"];
  } catch (const PreconditionError& e) {
    throw InputError(cfg.report.string() + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(cfg.report.string() + ": " + e.what());
  }

  if (cfg.csv) {
    std::cout << "framework,property,verdict,counterexample,caveats\n";
    for (const auto& c : certs) {
      std::string caveats;
      for (const auto& cv : c.caveats) caveats += (caveats.empty() ? "" : "; ") + cv;
      std::cout << analysis::to_string(c.framework) << ',' << analysis::to_string(c.property) << ','
                << analysis::to_string(c.verdict) << ',' << csv_field(c.counterexample) << ',' << csv_field(caveats)
                << '\n';
    }
  } else {
    for (const auto& [k, v] : meta.items()) std::cout << std::left << std::setw(20) << k << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    std::cout << '\n';
    for (const auto& c : certs) {
      std::cout << std::left << std::setw(11) << analysis::to_string(c.framework) << std::setw(25)
                << analysis::to_string(c.property) << analysis::to_string(c.verdict) << '\n';
      if (!c.counterexample.empty()) std::cout << "    counterexample: " << c.counterexample << '\n';
      for (const auto& cv : c.caveats) std::cout << "    caveat: " << cv << '\n';
    }
  }
  return exit_for(certs);
}

}  // namespace ergocert::cli
