#pragma once

#include <algorithm>
#include <utility>

namespace contractible::detail {

// Iterative Tarjan; recursion depth would otherwise follow long rays.
template <class Keep>
Components strongly_connected(const Condensation& c, Keep keep) {
  const std::uint32_t n = c.size();
  Components result;
  result.component.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  int counter = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (!keep(root) || index[root] != -1) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, next] = work.back();
      const auto& edges = c.out(v);
      if (next < edges.size()) {
        std::uint32_t w = edges[next++].to;
        if (!keep(w)) continue;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component[w] = result.count;
        } while (w != v);
        ++result.count;
      }
      std::uint32_t finished = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[finished]);
    }
  }
  return result;
}

}  // namespace contractible::detail
