#include "gpim/graph_gen.hpp"

#include <cmath>
#include <random>

namespace gpim {

namespace {

// Threshold draw keeps generation independent of the library's distribution
// implementations, so identical seeds give identical graphs everywhere.
bool coin(std::mt19937_64& rng, double p) {
  if (p <= 0.0) {
    rng();
    return false;
  }
  if (p >= 1.0) {
    rng();
    return true;
  }
  const double t = std::ldexp(p, 64);
  return static_cast<double>(rng()) < t;
}

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

}  // namespace

CsrGraph gen_er_graph(std::uint64_t n, double p, std::uint64_t seed) {
  if (n == 0) throw GraphError("gen_er_graph: n must be positive");
  if (p < 0.0 || p > 1.0) throw GraphError("gen_er_graph: p out of [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = u + 1; v < n; ++v)
      if (coin(rng, p))
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  auto g = graph_from_edges(n, std::move(edges));
  return normalize_degree_order(g).first;
}

CsrGraph gen_skewed_graph(std::uint64_t n, std::uint64_t hub_degree,
                          std::uint64_t seed) {
  if (hub_degree >= n) throw GraphError("gen_skewed_graph: hub_degree >= n");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<std::pair<VertexId, VertexId>> edges;
  const std::uint64_t hub = hub_degree;  // clique on vertices [0, hub]
  for (std::uint64_t u = 0; u <= hub && hub > 0; ++u)
    for (std::uint64_t v = u + 1; v <= hub; ++v)
      edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  const std::uint64_t tail_begin = hub > 0 ? hub + 1 : 0;
  const std::uint64_t tail = n > tail_begin ? n - tail_begin : 0;
  const double p_tail = tail > 1 ? 2.0 / static_cast<double>(tail) : 0.0;
  for (std::uint64_t u = tail_begin; u < n; ++u) {
    if (hub > 0) {
      // one anchor edge into the hub community
      auto a = static_cast<VertexId>(pick(rng, hub + 1));
      edges.emplace_back(a, static_cast<VertexId>(u));
    }
    for (std::uint64_t v = u + 1; v < n; ++v)
      if (coin(rng, p_tail))
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  auto g = graph_from_edges(n, std::move(edges));
  return normalize_degree_order(g).first;
}

}  // namespace gpim
