#include "gpim/pattern.hpp"

#include <algorithm>
#include <numeric>

namespace gpim {

bool Pattern::connected() const {
  if (k == 0) return false;
  std::array<bool, kMaxPatternSize> seen{};
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < k; ++u)
      if (adj[v][u] && !seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
  }
  return reached == k;
}

namespace {

Pattern make(std::string name, int k,
             std::initializer_list<std::pair<int, int>> edges) {
  Pattern p;
  p.k = k;
  p.name = std::move(name);
  for (auto [a, b] : edges) {
    p.adj[a][b] = true;
    p.adj[b][a] = true;
  }
  return p;
}

}  // namespace

Pattern builtin_pattern(std::string_view name) {
  if (name == "3cc") return make("3cc", 3, {{0, 1}, {0, 2}, {1, 2}});
  if (name == "wedge") return make("wedge", 3, {{0, 1}, {0, 2}});
  if (name == "4cc")
    return make("4cc", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  if (name == "4cl") return make("4cl", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  if (name == "4di")
    return make("4di", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  if (name == "5cc")
    return make("5cc", 5,
                {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4},
                 {2, 3}, {2, 4}, {3, 4}});
  throw PatternError("unknown pattern: " + std::string(name));
}

std::vector<std::string> builtin_pattern_names() {
  return {"3cc", "wedge", "4cc", "4di", "4cl", "5cc"};
}

std::vector<std::array<int, kMaxPatternSize>> automorphisms(const Pattern& p) {
  if (p.k > kMaxPatternSize) throw PatternError("pattern too large");
  std::array<int, kMaxPatternSize> perm{};
  std::iota(perm.begin(), perm.begin() + p.k, 0);
  std::vector<std::array<int, kMaxPatternSize>> autos;
  do {
    bool ok = true;
    for (int i = 0; i < p.k && ok; ++i)
      for (int j = i + 1; j < p.k && ok; ++j)
        if (p.adj[perm[i]][perm[j]] != p.adj[i][j]) ok = false;
    if (ok) autos.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.begin() + p.k));
  return autos;
}

}  // namespace gpim
