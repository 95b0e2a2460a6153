#include "gpim/placement.hpp"

namespace gpim {

Placement place_round_robin(const CsrGraph& g, const PimTopology& topo,
                            MappingKind mapping) {
  Placement p;
  p.mapping_kind = mapping;
  p.num_units = topo.num_units();
  p.owner.resize(g.num_vertices);
  p.dup_boundary.assign(p.num_units, 0);
  p.bytes_used.assign(p.num_units, 0);
  for (VertexId v = 0; v < g.num_vertices; ++v) {
    std::uint32_t u = v % p.num_units;
    p.owner[v] = u;
    p.bytes_used[u] += g.neighbor_bytes(v);
  }
  return p;
}

VertexId duplication_boundary(const CsrGraph& g,
                              std::uint64_t free_bytes_per_unit) {
  std::uint64_t used = 0;
  for (VertexId v = 0; v < g.num_vertices; ++v) {
    if (used + g.neighbor_bytes(v) > free_bytes_per_unit)
      return v;
    used += g.neighbor_bytes(v);
  }
  return static_cast<VertexId>(g.num_vertices);
}

Placement apply_duplication(Placement p, const CsrGraph& g, VertexId v_b,
                            std::uint64_t free_bytes_per_unit) {
  if (v_b > g.num_vertices) throw PlacementError("boundary beyond graph");
  std::uint64_t dup_bytes = 0;
  for (VertexId v = 0; v < v_b; ++v) dup_bytes += g.neighbor_bytes(v);
  if (dup_bytes > free_bytes_per_unit)
    throw PlacementError("duplication budget exceeded");
  for (std::uint32_t u = 0; u < p.num_units; ++u) {
    p.dup_boundary[u] = v_b;
    p.bytes_used[u] += dup_bytes;
  }
  // Copies come from the owners; the owner's own list needs no transfer.
  for (VertexId v = 0; v < v_b; ++v)
    p.dup_copy_bytes += g.neighbor_bytes(v) * (p.num_units - 1);
  return p;
}

}  // namespace gpim
