#pragma once

#include "ergocert/analysis.hpp"
#include "ergocert/model.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef ERGOCERT_TEST_NETWORKS
#define ERGOCERT_TEST_NETWORKS "tests/networks"
#endif

namespace fixtures {

using ergocert::analysis::Matrix;
using ergocert::analysis::Problem;
using ergocert::analysis::Vector;

inline std::string network_path(const std::string& name) { return std::string(ERGOCERT_TEST_NETWORKS) + "/" + name; }

inline Problem load(const std::string& name) {
  return Problem::from(ergocert::model::load_network(network_path(name)));
}

inline Problem from_source(const std::string& text) { return Problem::from(ergocert::model::parse_network(text)); }

/// The four-species actuated network. Reactions can be switched off; a rate
/// without an explicit domain is fixed at 1.
struct FourSpecies {
  std::map<std::string, std::string> domains;
  std::map<std::string, bool> present = {{"ct1", true}, {"ct2", true}, {"ct3", true}, {"ct4", true},
                                         {"cv1", true}, {"cv2", true}, {"cv3", true}};

  FourSpecies& set(const std::string& rate, const std::string& domain) {
    domains[rate] = domain;
    return *this;
  }
  FourSpecies& drop(const std::string& rate) {
    present[rate] = false;
    return *this;
  }

  std::string source() const {
    static const std::vector<std::pair<std::string, std::string>> reactions = {
        {"dg1", "X1 -> 0"},       {"ct1", "X1 -> X1 + X2"}, {"ct2", "X1 -> X1 + X3"}, {"dg2", "X2 -> 0"},
        {"cv1", "X2 -> X4"},      {"dg3", "X3 -> 0"},       {"cv2", "X3 -> X4"},      {"ct4", "X3 -> 2 X3"},
        {"dg4", "X4 -> 0"},       {"cv3", "X4 -> X3"},      {"ct3", "X4 -> X4 + X1"}};
    std::ostringstream os;
    std::vector<std::string> used;
    for (const auto& [rate, text] : reactions) {
      auto it = present.find(rate);
      if (it != present.end() && !it->second) continue;
      os << text << " @ " << rate << "\n";
      used.push_back(rate);
    }
    for (const auto& rate : used) {
      auto it = domains.find(rate);
      os << rate << " " << (it == domains.end() ? "= 1" : it->second) << "\n";
    }
    return os.str();
  }

  Problem problem() const { return from_source(source()); }
};

/// Domains under which every entry of A+ keeps the network stable and X1 reaches X4.
inline FourSpecies four_species_interval() {
  FourSpecies e;
  for (const char* dg : {"dg1", "dg2", "dg3", "dg4"}) e.set(dg, "in [1, 2]");
  e.set("ct1", "in [0.2, 0.4]").set("ct2", "in [0.1, 0.3]").set("ct3", "in [0.1, 0.2]").set("ct4", "in [0, 0.1]");
  for (const char* cv : {"cv1", "cv2", "cv3"}) e.set(cv, "in [0.5, 1]");
  return e;
}

/// Robust fixture: dg2, dg3 may vanish, so robust stability hinges on dg1 dg4 - ct3 (ct1 + ct2).
inline FourSpecies four_species_robust(const std::string& ct3) {
  FourSpecies e;
  e.set("dg1", "in [1, 2]").set("dg2", "in [0, 1]").set("dg3", "in [0, 1]").set("dg4", "in [1, 2]");
  e.set("ct1", "in [0.2, 0.4]").set("ct2", "in [0.1, 0.3]").set("ct4", "in [0, 0]").set("ct3", ct3);
  for (const char* cv : {"cv1", "cv2", "cv3"}) e.set(cv, "in [0.5, 2]");
  return e;
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

/// Network whose characteristic matrix ranges over [lo, hi] entrywise: degradation
/// for the diagonal, catalytic production for the off-diagonal entries. Requires
/// lo <= hi, hi_ii <= 0 and lo_ij >= 0 off the diagonal.
inline std::string metzler_network(const Matrix& lo, const Matrix& hi, const Vector* inflow = nullptr) {
  const int d = static_cast<int>(lo.rows());
  std::ostringstream rx, dom;
  auto domain = [&](double a, double b) { return a == b ? "= " + fmt(a) : "in [" + fmt(a) + ", " + fmt(b) + "]"; };
  // degradations first: species order is order of first appearance
  for (int j = 0; j < d; ++j) {
    rx << "X" << j + 1 << " -> 0 @ d" << j + 1 << "\n";
    dom << "d" << j + 1 << " " << domain(-hi(j, j), -lo(j, j)) << "\n";
  }
  for (int j = 0; j < d; ++j) {
    const std::string X = "X" + std::to_string(j + 1);
    if (inflow && (*inflow)[j] > 0.0) {
      rx << "0 -> " << X << " @ b" << j + 1 << "\n";
      dom << "b" << j + 1 << " = " << fmt((*inflow)[j]) << "\n";
    }
    for (int i = 0; i < d; ++i) {
      if (i == j || hi(i, j) <= 0.0) continue;
      const std::string r = "c" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      rx << X << " -> " << X << " + X" << i + 1 << " @ " << r << "\n";
      dom << r << " " << domain(lo(i, j), hi(i, j)) << "\n";
    }
  }
  return rx.str() + dom.str();
}

inline std::string metzler_network(const Matrix& a, const Vector* inflow = nullptr) {
  return metzler_network(a, a, inflow);
}

/// Random Metzler matrix with strictly negative diagonal and sparse nonnegative off-diagonal part.
inline Matrix random_metzler(std::mt19937_64& rng, int d, double density = 0.5, double offdiag_scale = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j)
        m(i, j) = -(0.2 + 2.0 * u(rng));
      else if (u(rng) < density)
        m(i, j) = offdiag_scale * (0.05 + u(rng));
    }
  return m;
}

}  // namespace fixtures
