#include "ergocert/analysis.hpp"

#include "ergocert/error.hpp"

#include "json.hpp"

namespace ergocert::analysis {

using json = nlohmann::ordered_json;

namespace {

json vec(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mat(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

Vector to_vec(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Matrix to_mat(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  Matrix m(rows, cols);
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows) throw PreconditionError("certificate matrix: row count mismatch");
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(data[i].size()) != cols)
      throw PreconditionError("certificate matrix: column count mismatch");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = data[i][k].get<double>();
  }
  return m;
}

json to_object(const Certificate& c) {
  json j;
  j["framework"] = to_string(c.framework);
  j["property"] = to_string(c.property);
  j["verdict"] = to_string(c.verdict);
  if (c.actuated >= 0) j["actuated"] = c.actuated;
  if (c.controlled >= 0) j["controlled"] = c.controlled;
  if (c.v) j["v"] = vec(*c.v);
  if (c.w) j["w"] = vec(*c.w);
  if (c.v_aux) j["v_aux"] = vec(*c.v_aux);
  if (c.mu_shift) j["mu_shift"] = *c.mu_shift;
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.setpoint_bound) j["setpoint_bound"] = *c.setpoint_bound;
  if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
  if (!c.counterexample_point.empty()) j["counterexample_point"] = c.counterexample_point;
  j["caveats"] = c.caveats;
  json ms = json::object();
  for (const auto& [name, m] : c.matrices) ms[name] = mat(m);
  j["matrices"] = ms;
  json notes = json::object();
  for (const auto& [k, v] : c.notes) notes[k] = v;
  j["notes"] = notes;
  if (!c.samples.empty()) {
    j["sample_symbols"] = c.sample_symbols;
    json s = json::array();
    for (const auto& smp : c.samples) s.push_back({{"point", smp.point}, {"v", vec(smp.v)}});
    j["samples"] = s;
  } else if (!c.sample_symbols.empty()) {
    j["sample_symbols"] = c.sample_symbols;
  }
  j["irreducible_asserted"] = c.irreducible_asserted;
  j["network_hash"] = c.network_hash;
  return j;
}

Certificate from_object(const json& j) {
  Certificate c;
  c.framework = parse_framework(j.at("framework").get<std::string>());
  c.property = parse_property(j.at("property").get<std::string>());
  c.verdict = parse_verdict(j.at("verdict").get<std::string>());
  c.actuated = j.value("actuated", -1);
  c.controlled = j.value("controlled", -1);
  if (j.contains("v")) c.v = to_vec(j["v"]);
  if (j.contains("w")) c.w = to_vec(j["w"]);
  if (j.contains("v_aux")) c.v_aux = to_vec(j["v_aux"]);
  if (j.contains("mu_shift")) c.mu_shift = j["mu_shift"].get<double>();
  if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
  if (j.contains("setpoint_bound")) c.setpoint_bound = j["setpoint_bound"].get<double>();
  c.counterexample = j.value("counterexample", std::string());
  if (j.contains("counterexample_point")) c.counterexample_point = j["counterexample_point"].get<std::vector<double>>();
  if (j.contains("caveats")) c.caveats = j["caveats"].get<std::vector<std::string>>();
  if (j.contains("matrices"))
    for (const auto& [name, m] : j["matrices"].items()) c.matrices[name] = to_mat(m);
  if (j.contains("notes"))
    for (const auto& [k, v] : j["notes"].items()) c.notes[k] = v.get<std::string>();
  if (j.contains("sample_symbols")) c.sample_symbols = j["sample_symbols"].get<std::vector<std::string>>();
  if (j.contains("samples"))
    for (const auto& s : j["samples"]) c.samples.push_back({s.at("point").get<std::vector<double>>(), to_vec(s.at("v"))});
  c.irreducible_asserted = j.value("irreducible_asserted", false);
  c.network_hash = j.value("network_hash", std::string());
  return c;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed certificate JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace

std::string to_json(const Certificate& cert, int indent) { return to_object(cert).dump(indent); }

Certificate certificate_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] { return from_object(j); });
}

std::string report_json(const std::vector<Certificate>& certs, const std::map<std::string, std::string>& meta) {
  json j;
  json m = json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  j["meta"] = m;
  json arr = json::array();
  for (const auto& c : certs) arr.push_back(to_object(c));
  j["certificates"] = arr;
  return j.dump(2);
}

std::vector<Certificate> certificates_from_report(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    std::vector<Certificate> out;
    if (j.is_array()) {
      for (const auto& c : j) out.push_back(from_object(c));
    } else if (j.contains("certificates")) {
      for (const auto& c : j["certificates"]) out.push_back(from_object(c));
    } else {
      out.push_back(from_object(j));
    }
    return out;
  });
}

}  // namespace ergocert::analysis
