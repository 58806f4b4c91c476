#include "ergocert/error.hpp"
#include "ergocert/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace ergocert::poly {

const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::Positive: return "positive";
    case Positivity::CounterexampleFound: return "counterexample";
    case Positivity::Unknown: return "unknown";
  }
  return "?";
}

namespace {

struct Bounder {
  const MultiPoly& p;
  std::vector<MultiPoly> grad;

  explicit Bounder(const MultiPoly& poly) : p(poly) {
    for (int i = 0; i < p.num_variables(); ++i) grad.push_back(p.derivative(i));
  }

  // max of the natural extension and the mean-value form around the centre
  double lower(const std::vector<Interval>& box) const {
    const double natural = p.evaluate(std::span<const Interval>(box)).lo;
    std::vector<double> c(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) c[i] = 0.5 * (box[i].lo + box[i].hi);
    double mv = p.evaluate(std::span<const double>(c));
    for (std::size_t i = 0; i < box.size(); ++i) {
      const double r = 0.5 * (box[i].hi - box[i].lo);
      if (r == 0.0) continue;
      const Interval g = grad[i].evaluate(std::span<const Interval>(box));
      mv -= std::max(std::abs(g.lo), std::abs(g.hi)) * r;
    }
    return std::max(natural, mv);
  }
};

struct Node {
  double lb;
  std::vector<Interval> box;
  bool operator<(const Node& o) const { return lb > o.lb; }  // min-heap on lb
};

// Projected coordinate descent from x; returns the best point found.
std::vector<double> descend(const MultiPoly& p, const std::vector<Interval>& box, std::vector<double> x) {
  double fx = p.evaluate(std::span<const double>(x));
  std::vector<double> step(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) step[i] = 0.25 * (box[i].hi - box[i].lo);
  for (int iter = 0; iter < 200 && fx > 0.0; ++iter) {
    bool improved = false;
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (step[i] == 0.0) continue;
      for (double dir : {-1.0, 1.0}) {
        std::vector<double> y(x);
        y[i] = std::clamp(x[i] + dir * step[i], box[i].lo, box[i].hi);
        const double fy = p.evaluate(std::span<const double>(y));
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      bool any = false;
      for (auto& s : step) {
        s *= 0.5;
        any = any || s > 1e-12;
      }
      if (!any) break;
    }
  }
  return x;
}

}  // namespace

PositivityResult box_positivity(const MultiPoly& p, const std::vector<Interval>& box, const PositivityOptions& options) {
  const std::size_t n = box.size();
  if (static_cast<int>(n) != p.num_variables()) throw PreconditionError("box dimension does not match polynomial");
  for (const auto& b : box)
    if (!(b.lo <= b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi))
      throw PreconditionError("positivity check needs a bounded box");

  PositivityResult res;

  // grid scan
  std::vector<int> free_dims;
  for (std::size_t i = 0; i < n; ++i)
    if (box[i].hi > box[i].lo) free_dims.push_back(static_cast<int>(i));
  int per_dim = 1;
  if (!free_dims.empty()) {
    per_dim = static_cast<int>(std::floor(std::pow(static_cast<double>(options.grid_points), 1.0 / free_dims.size())));
    per_dim = std::clamp(per_dim, 2, 101);
  }
  std::vector<double> x(n), best(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = box[i].lo;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<int> counter(free_dims.size(), 0);
  while (true) {
    for (std::size_t f = 0; f < free_dims.size(); ++f) {
      const auto& b = box[free_dims[f]];
      x[free_dims[f]] = b.lo + (b.hi - b.lo) * counter[f] / (per_dim - 1);
    }
    const double v = p.evaluate(std::span<const double>(x));
    if (v < best_value) {
      best_value = v;
      best = x;
    }
    std::size_t f = 0;
    while (f < counter.size() && ++counter[f] == per_dim) counter[f++] = 0;
    if (f == counter.size()) break;
  }
  best = descend(p, box, best);
  best_value = p.evaluate(std::span<const double>(best));
  res.point = best;
  res.value = best_value;
  if (best_value <= 0.0) {
    res.status = Positivity::CounterexampleFound;
    res.certified_lower = best_value;
    return res;
  }

  // branch and bound, lowest bound first
  const Bounder bounder(p);
  std::priority_queue<Node> open;
  open.push({bounder.lower(box), box});
  double certified = std::numeric_limits<double>::infinity();
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.lb > 0.0) {
      // every remaining box has lb >= this one
      certified = std::min(certified, node.lb);
      res.status = Positivity::Positive;
      res.certified_lower = certified;
      return res;
    }
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = 0.5 * (node.box[i].lo + node.box[i].hi);
    const double vc = p.evaluate(std::span<const double>(c));
    if (vc <= 0.0) {
      res.status = Positivity::CounterexampleFound;
      res.point = c;
      res.value = vc;
      res.certified_lower = node.lb;
      return res;
    }
    if (res.subdivisions >= options.max_subdivisions) {
      res.status = Positivity::Unknown;
      res.certified_lower = node.lb;
      return res;
    }
    // split the widest side relative to the original box
    int split = -1;
    double widest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double full = box[i].hi - box[i].lo;
      if (full == 0.0) continue;
      const double rel = (node.box[i].hi - node.box[i].lo) / full;
      if (rel > widest) widest = rel, split = static_cast<int>(i);
    }
    if (split < 0 || widest < 1e-12) {
      res.status = Positivity::Unknown;
      res.certified_lower = node.lb;
      return res;
    }
    ++res.subdivisions;
    const double mid = c[split];
    Node left{0.0, node.box}, right{0.0, node.box};
    left.box[split].hi = mid;
    right.box[split].lo = mid;
    left.lb = bounder.lower(left.box);
    right.lb = bounder.lower(right.box);
    open.push(std::move(left));
    open.push(std::move(right));
  }
  res.status = Positivity::Positive;
  res.certified_lower = certified;
  return res;
}

}  // namespace ergocert::poly
