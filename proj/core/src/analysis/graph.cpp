#include "ergocert/analysis.hpp"

#include "ergocert/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace ergocert::analysis {

bool graph_path(const Matrix& m, int from, int to) {
  const int d = static_cast<int>(m.rows());
  if (from < 0 || from >= d || to < 0 || to >= d) throw PreconditionError("graph node out of range");
  if (from == to) return true;
  std::vector<bool> seen(d, false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int b = 0; b < d; ++b) {
      if (b == a || seen[b] || m(b, a) == 0.0) continue;
      if (b == to) return true;
      seen[b] = true;
      queue.push_back(b);
    }
  }
  return false;
}

std::vector<int> find_cycle(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  std::vector<int> state(d, 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> stack;
  std::vector<int> cycle;
  std::function<bool(int)> dfs = [&](int a) {
    state[a] = 1;
    stack.push_back(a);
    for (int b = 0; b < d; ++b) {
      if (b == a || m(b, a) == 0.0) continue;
      if (state[b] == 1) {
        auto it = std::find(stack.begin(), stack.end(), b);
        cycle.assign(it, stack.end());
        cycle.push_back(b);
        return true;
      }
      if (state[b] == 0 && dfs(b)) return true;
    }
    stack.pop_back();
    state[a] = 2;
    return false;
  };
  for (int a = 0; a < d; ++a)
    if (state[a] == 0 && dfs(a)) return cycle;
  return {};
}

}  // namespace ergocert::analysis
