#include "gpim/plan.hpp"

#include <algorithm>
#include <numeric>

#include "gpim/executor.hpp"
#include "gpim/graph_gen.hpp"

namespace gpim {

std::optional<VertexId> LoopPlan::level_bound(
    int level, std::span<const VertexId> matched) const {
  std::optional<VertexId> bound;
  for (const auto& r : restrictions)
    if (r.smaller == level) {
      VertexId b = matched[r.larger];
      if (!bound || b < *bound) bound = b;
    }
  return bound;
}

std::optional<VertexId> LoopPlan::fetch_threshold(
    int slot, std::span<const VertexId> matched) const {
  const auto& vars = fetch_bound_vars[slot];
  if (vars.empty()) return std::nullopt;
  std::optional<VertexId> th;
  for (int j : vars) {
    VertexId b = matched[j];
    if (!th || b < *th) th = b;
  }
  return th;
}

bool LoopPlan::slot_needed(int slot) const {
  for (const auto& e : set_exprs) {
    if (e.level <= slot) continue;
    for (int j : e.positive_sources)
      if (j == slot) return true;
    for (int j : e.negative_sources)
      if (j == slot) return true;
  }
  return false;
}

namespace {

std::array<int, kMaxPatternSize> matching_order(const Pattern& p) {
  std::array<int, kMaxPatternSize> order{};
  std::vector<bool> placed(p.k, false);
  int first = 0;
  for (int v = 1; v < p.k; ++v)
    if (p.degree(v) > p.degree(first)) first = v;
  order[0] = first;
  placed[first] = true;
  for (int i = 1; i < p.k; ++i) {
    int best = -1;
    for (int v = 0; v < p.k; ++v) {
      if (placed[v]) continue;
      bool adjacent = false;
      for (int j = 0; j < i; ++j)
        if (p.adj[v][order[j]]) adjacent = true;
      if (!adjacent) continue;
      if (best < 0 || p.degree(v) > p.degree(best)) best = v;
    }
    if (best < 0) throw PlanError("pattern is not connected");
    order[i] = best;
    placed[best] = true;
  }
  return order;
}

Pattern reorder(const Pattern& p, const std::array<int, kMaxPatternSize>& order) {
  Pattern q;
  q.k = p.k;
  q.name = p.name;
  for (int i = 0; i < p.k; ++i)
    for (int j = 0; j < p.k; ++j) q.adj[i][j] = p.adj[order[i]][order[j]];
  return q;
}

std::vector<Restriction> make_restrictions(const Pattern& reordered) {
  std::vector<Restriction> rs;
  for (const auto& sigma : automorphisms(reordered)) {
    int i = 0;
    while (i < reordered.k && sigma[i] == i) ++i;
    if (i == reordered.k) continue;  // identity
    // Lex-max representative per orbit: require v_{sigma(i)} < v_i at the
    // first moved position (sigma(i) > i there).
    Restriction r{sigma[i], i};
    if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(r);
  }
  // Drop restrictions implied by the transitive closure of the rest.
  for (std::size_t a = 0; a < rs.size();) {
    std::array<std::array<bool, kMaxPatternSize>, kMaxPatternSize> lt{};
    for (std::size_t b = 0; b < rs.size(); ++b)
      if (b != a) lt[rs[b].smaller][rs[b].larger] = true;
    for (int m = 0; m < reordered.k; ++m)
      for (int x = 0; x < reordered.k; ++x)
        for (int y = 0; y < reordered.k; ++y)
          if (lt[x][m] && lt[m][y]) lt[x][y] = true;
    if (lt[rs[a].smaller][rs[a].larger])
      rs.erase(rs.begin() + a);
    else
      ++a;
  }
  std::sort(rs.begin(), rs.end(), [](const Restriction& x, const Restriction& y) {
    return std::tie(x.smaller, x.larger) < std::tie(y.smaller, y.larger);
  });
  return rs;
}

void check_acyclic(const std::vector<Restriction>& rs, int k) {
  // "<" relation over levels must be a DAG.
  std::vector<std::vector<int>> succ(k);
  for (const auto& r : rs) succ[r.smaller].push_back(r.larger);
  std::vector<int> color(k, 0);
  auto dfs = [&](auto&& self, int v) -> bool {
    color[v] = 1;
    for (int u : succ[v]) {
      if (color[u] == 1) return false;
      if (color[u] == 0 && !self(self, u)) return false;
    }
    color[v] = 2;
    return true;
  };
  for (int v = 0; v < k; ++v)
    if (color[v] == 0 && !dfs(dfs, v))
      throw PlanError("inconsistent restriction set (cycle)");
}

// Transitive closure of the "<" relation over plan levels.
std::array<std::array<bool, kMaxPatternSize>, kMaxPatternSize> less_matrix(
    const std::vector<Restriction>& rs, int k) {
  std::array<std::array<bool, kMaxPatternSize>, kMaxPatternSize> less{};
  for (const auto& r : rs) less[r.smaller][r.larger] = true;
  for (int m = 0; m < k; ++m)
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (less[a][m] && less[m][b]) less[a][b] = true;
  return less;
}

void derive_fetch_bounds(LoopPlan& plan) {
  const int k = plan.depth;
  auto less = less_matrix(plan.restrictions, k);
  auto bound_vars = [&](int level) {
    std::vector<int> vars;
    for (const auto& r : plan.restrictions)
      if (r.smaller == level) vars.push_back(r.larger);
    return vars;
  };
  for (int slot = 0; slot < k - 1; ++slot) {
    std::vector<int> consumers;
    for (const auto& e : plan.set_exprs) {
      bool uses = std::find(e.positive_sources.begin(), e.positive_sources.end(),
                            slot) != e.positive_sources.end() ||
                  std::find(e.negative_sources.begin(), e.negative_sources.end(),
                            slot) != e.negative_sources.end();
      if (uses) consumers.push_back(e.level);
    }
    if (consumers.empty()) continue;
    auto b0 = bound_vars(consumers.front());
    if (b0.empty()) continue;
    // A single fetch filtered at the first consumer's bound is sound only if
    // every later consumer's bound is provably no looser.
    bool ok = true;
    for (std::size_t ci = 1; ci < consumers.size() && ok; ++ci) {
      auto bl = bound_vars(consumers[ci]);
      bool covered = false;
      for (int jp : bl) {
        bool tighter_than_all = true;
        for (int j : b0)
          if (jp != j && !less[jp][j]) tighter_than_all = false;
        if (tighter_than_all && !bl.empty()) covered = true;
      }
      if (!covered) ok = false;
    }
    if (ok) plan.fetch_bound_vars[slot] = b0;
  }
}

void validate_plan(const LoopPlan& plan) {
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t n = 8 + (i % 8);
    const double p = (i % 2) ? 0.4 : 0.2;
    auto g = gen_er_graph(n, p, 1000 + i);
    auto ref = reference_count(plan, g);
    auto expect = oracle_count(plan.pattern, g, plan.semantics);
    if (ref.count != expect)
      throw PlanError("plan validation failed for pattern " + plan.pattern.name +
                      ": got " + std::to_string(ref.count) + ", oracle " +
                      std::to_string(expect));
  }
}

}  // namespace

LoopPlan compile_plan(const Pattern& p, Semantics semantics) {
  if (p.k < 3 || p.k > kMaxPatternSize)
    throw PlanError("pattern size out of range");
  if (!p.connected()) throw PlanError("pattern is not connected");

  LoopPlan plan;
  plan.semantics = semantics;
  plan.depth = p.k;
  plan.order = matching_order(p);
  plan.pattern = reorder(p, plan.order);

  for (int level = 1; level < p.k; ++level) {
    SetExpr e;
    e.level = level;
    for (int j = 0; j < level; ++j) {
      if (plan.pattern.adj[level][j])
        e.positive_sources.push_back(j);
      else if (semantics == Semantics::Induced)
        e.negative_sources.push_back(j);
    }
    if (e.positive_sources.empty())
      throw PlanError("disconnected matching order");
    plan.set_exprs.push_back(std::move(e));
  }

  plan.restrictions = make_restrictions(plan.pattern);
  check_acyclic(plan.restrictions, plan.depth);
  derive_fetch_bounds(plan);
  validate_plan(plan);
  return plan;
}

}  // namespace gpim
