#include "ergocert/model.hpp"

#include "json.hpp"

namespace ergocert::model {

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json affine_json(const AffineMatrix& a) {
  nlohmann::json terms = nlohmann::json::object();
  for (std::size_t k = 0; k < a.symbols().size(); ++k) terms[a.symbols()[k]] = matrix_json(a.coefficient(k));
  return {{"constant", matrix_json(a.constant())}, {"terms", terms}};
}

}  // namespace

std::string canonical_dump(const StoichiometricDecomposition& dec, const CharacteristicModel& model) {
  nlohmann::ordered_json j;
  j["species"] = dec.species;
  j["rates"] = dec.rates;
  nlohmann::json s = nlohmann::json::array();
  for (Eigen::Index i = 0; i < dec.S.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (Eigen::Index k = 0; k < dec.S.cols(); ++k) r.push_back(dec.S(i, k));
    s.push_back(std::move(r));
  }
  j["S"] = s;
  std::vector<std::string> classes;
  for (auto c : dec.classes) classes.emplace_back(to_string(c));
  j["classes"] = classes;
  j["blocks"] = {{"s0", dec.s0}, {"dg", dec.dg}, {"ct", dec.ct}, {"cv", dec.cv}, {"sb", dec.sb}};
  j["A"] = affine_json(model.A);
  j["b0"] = affine_json(model.b0);
  return j.dump(2) + "\n";
}

}  // namespace ergocert::model
