#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gpim/csr_graph.hpp"
#include "gpim/topology.hpp"

namespace gpim {

class PlacementError : public std::runtime_error {
 public:
  explicit PlacementError(const std::string& what) : std::runtime_error(what) {}
};

/// Neighbor-list ownership: round-robin over units, plus an optional
/// duplicated prefix [0, dup_boundary) replicated into every unit.
struct Placement {
  MappingKind mapping_kind = MappingKind::Default;
  std::uint32_t num_units = 0;
  std::vector<std::uint32_t> owner;       // vertex -> unit
  std::vector<VertexId> dup_boundary;     // per unit, first non-duplicated id
  std::vector<std::uint64_t> bytes_used;  // per unit
  std::uint64_t dup_copy_bytes = 0;       // one-time preprocessing traffic

  /// (serving unit, served locally). Local when the requester holds a
  /// duplicated copy or owns the list itself.
  std::pair<std::uint32_t, bool> resolve(std::uint32_t requester,
                                         VertexId v) const {
    if (v < dup_boundary[requester]) return {requester, true};
    std::uint32_t o = owner[v];
    return {o, o == requester};
  }
};

/// owner(v) = v mod num_units; expects a degree-normalized graph.
Placement place_round_robin(const CsrGraph& g, const PimTopology& topo,
                            MappingKind mapping = MappingKind::Default);

/// Largest prefix [0, v_b) of the degree-sorted vertices whose cumulative
/// neighbor-list bytes fit the per-unit free budget (greedy, in id order).
VertexId duplication_boundary(const CsrGraph& g,
                              std::uint64_t free_bytes_per_unit);

/// Replicates lists [0, v_b) into every unit. Charges the copy bytes to
/// bookkeeping only; kernel time is unaffected (load-time preprocessing).
/// When a budget is given, throws if the duplicated bytes exceed it.
Placement apply_duplication(Placement p, const CsrGraph& g, VertexId v_b,
                            std::uint64_t free_bytes_per_unit = UINT64_MAX);

}  // namespace gpim
