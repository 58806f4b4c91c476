#include "ergocert/error.hpp"
#include "ergocert/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ergocert::poly {

namespace {

int total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

Interval mul(Interval a, Interval b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval power(Interval a, int e) {
  if (e == 0) return {1.0, 1.0};
  const double l = std::pow(a.lo, e);
  const double h = std::pow(a.hi, e);
  if (e % 2 == 1 || a.lo >= 0.0) return {std::min(l, h), std::max(l, h)};
  if (a.hi <= 0.0) return {std::min(l, h), std::max(l, h)};
  return {0.0, std::max(l, h)};
}

}  // namespace

MultiPoly::MultiPoly(std::vector<std::string> variables) : variables_(std::move(variables)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> variables, double c) {
  MultiPoly p(std::move(variables));
  p.add_term(Exponent(p.variables_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, int index) {
  MultiPoly p(std::move(variables));
  Exponent e(p.variables_.size(), 0);
  e.at(index) = 1;
  p.add_term(e, 1.0);
  return p;
}

int MultiPoly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total(e));
  return d;
}

double MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

void MultiPoly::add_term(const Exponent& e, double c) {
  if (e.size() != variables_.size()) throw PreconditionError("exponent length does not match variable count");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void MultiPoly::prune(double relative_tol) {
  double scale = 0.0;
  for (const auto& [e, c] : terms_) scale = std::max(scale, std::abs(c));
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= relative_tol * scale)
      it = terms_.erase(it);
    else
      ++it;
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (variables_ != o.variables_) throw PreconditionError("polynomials over different variable lists");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r(*this);
  r += o;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const { return *this * -1.0; }

MultiPoly MultiPoly::operator*(double s) const {
  MultiPoly r(variables_);
  if (s == 0.0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(variables_);
  Exponent e(variables_.size());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

double MultiPoly::evaluate(std::span<const double> x) const {
  if (x.size() != variables_.size()) throw PreconditionError("evaluation point has wrong dimension");
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

Interval MultiPoly::evaluate(std::span<const Interval> box) const {
  if (box.size() != variables_.size()) throw PreconditionError("box has wrong dimension");
  Interval s{0.0, 0.0};
  for (const auto& [e, c] : terms_) {
    Interval t{c, c};
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t = mul(t, power(box[i], e[i]));
    s.lo += t.lo;
    s.hi += t.hi;
  }
  return s;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(variables_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponent f(e);
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, double>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const int da = total(a.first), db = total(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  os.precision(15);
  bool first = true;
  for (const auto& [e, c] : sorted) {
    double mag = c;
    if (first) {
      if (c < 0) os << '-', mag = -c;
    } else {
      os << (c < 0 ? " - " : " + ");
      mag = std::abs(c);
    }
    first = false;
    const bool constant_term = total(e) == 0;
    bool need_star = false;
    if (mag != 1.0 || constant_term) {
      os << mag;
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) os << '*';
      os << variables_[i];
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace ergocert::poly
