#include "gpim/executor.hpp"

#include <algorithm>
#include <numeric>

#include "gpim/set_ops.hpp"

namespace gpim {

std::uint64_t WorkVector::total() const {
  return std::accumulate(per_root_work.begin(), per_root_work.end(),
                         std::uint64_t{0});
}

std::vector<VertexId> level_candidates(const LoopPlan& plan, const CsrGraph& g,
                                       int level,
                                       std::span<const VertexId> matched,
                                       std::uint64_t* elements) {
  const SetExpr& e = plan.expr(level);
  auto bound = plan.level_bound(level, matched);
  auto src = [&](int j) { return g.neighbors(matched[j]); };

  std::vector<VertexId> cur;
  {
    auto first = src(e.positive_sources.front());
    cur.reserve(first.size());
    for (VertexId x : first) {
      if (bound && x >= *bound) break;
      cur.push_back(x);
    }
    if (elements) *elements += first.size();
  }
  for (std::size_t i = 1; i < e.positive_sources.size(); ++i) {
    auto b = src(e.positive_sources[i]);
    if (elements) *elements += cur.size() + b.size();
    cur = bounded_intersect(cur, b, bound);
  }
  for (int j : e.negative_sources) {
    auto b = src(j);
    if (elements) *elements += cur.size() + b.size();
    cur = bounded_subtract(cur, b, bound);
  }
  return cur;
}

namespace {

std::uint64_t count_from(const LoopPlan& plan, const CsrGraph& g, int level,
                         std::array<VertexId, kMaxPatternSize>& matched) {
  auto cands = level_candidates(plan, g, level,
                                std::span(matched.data(), level), nullptr);
  std::uint64_t found = 0;
  for (VertexId v : cands) {
    bool dup = false;
    for (int j = 0; j < level; ++j)
      if (matched[j] == v) dup = true;
    if (dup) continue;
    if (level == plan.depth - 1) {
      ++found;
    } else {
      matched[level] = v;
      found += count_from(plan, g, level + 1, matched);
    }
  }
  return found;
}

}  // namespace

CountResult reference_count(const LoopPlan& plan, const CsrGraph& g,
                            const std::vector<VertexId>* roots) {
  CountResult res;
  auto run_root = [&](VertexId v0) {
    std::array<VertexId, kMaxPatternSize> matched{};
    matched[0] = v0;
    return count_from(plan, g, 1, matched);
  };
  if (roots) {
    res.work.per_root_work.resize(roots->size(), 0);
    for (std::size_t i = 0; i < roots->size(); ++i) {
      std::uint64_t w = run_root((*roots)[i]);
      res.work.per_root_work[i] = w;
      res.count += w;
    }
  } else {
    res.work.per_root_work.resize(g.num_vertices, 0);
    for (VertexId v0 = 0; v0 < g.num_vertices; ++v0) {
      std::uint64_t w = run_root(v0);
      res.work.per_root_work[v0] = w;
      res.count += w;
    }
  }
  return res;
}

namespace {

std::uint64_t maps_from(const Pattern& p, const CsrGraph& g, Semantics sem,
                        int slot, std::array<VertexId, kMaxPatternSize>& img,
                        std::array<bool, kMaxPatternSize>& used_slot) {
  if (slot == p.k) return 1;
  // Narrow the candidate scan through an already-mapped neighbor when one
  // exists; otherwise scan all vertices.
  int anchor = -1;
  for (int j = 0; j < p.k; ++j)
    if (used_slot[j] && p.adj[slot][j]) {
      anchor = j;
      break;
    }
  auto consider = [&](VertexId v) -> std::uint64_t {
    for (int j = 0; j < p.k; ++j)
      if (used_slot[j] && img[j] == v) return 0;
    for (int j = 0; j < p.k; ++j) {
      if (!used_slot[j]) continue;
      bool have = g.has_edge(v, img[j]);
      if (p.adj[slot][j] && !have) return 0;
      if (sem == Semantics::Induced && !p.adj[slot][j] && have) return 0;
    }
    img[slot] = v;
    used_slot[slot] = true;
    std::uint64_t n = maps_from(p, g, sem, slot + 1, img, used_slot);
    used_slot[slot] = false;
    return n;
  };
  std::uint64_t total = 0;
  if (anchor >= 0) {
    for (VertexId v : g.neighbors(img[anchor])) total += consider(v);
  } else {
    for (VertexId v = 0; v < g.num_vertices; ++v) total += consider(v);
  }
  return total;
}

}  // namespace

std::uint64_t oracle_injective_maps(const Pattern& p, const CsrGraph& g,
                                    Semantics semantics) {
  if (g.num_vertices > 64)
    throw std::invalid_argument("oracle limited to graphs with <= 64 vertices");
  std::array<VertexId, kMaxPatternSize> img{};
  std::array<bool, kMaxPatternSize> used{};
  return maps_from(p, g, semantics, 0, img, used);
}

std::uint64_t oracle_count(const Pattern& p, const CsrGraph& g,
                           Semantics semantics) {
  std::uint64_t maps = oracle_injective_maps(p, g, semantics);
  std::uint64_t aut = automorphisms(p).size();
  if (maps % aut != 0)
    throw std::logic_error("map count not divisible by automorphism count");
  return maps / aut;
}

}  // namespace gpim
