#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gpim/csr_graph.hpp"
#include "gpim/plan.hpp"

namespace gpim {

/// Per-root work: embeddings found under each root vertex v_0. The sum over
/// roots equals the run's total count; its skew is the load-imbalance signal.
struct WorkVector {
  std::vector<std::uint64_t> per_root_work;

  std::uint64_t total() const;
};

struct CountResult {
  std::uint64_t count = 0;
  WorkVector work;
};

/// Candidate list for `level` given matched vertices for levels 0..level-1.
/// When `elements` is non-null it accumulates the number of list elements
/// traversed by the merge operations (the compute-cost proxy).
std::vector<VertexId> level_candidates(const LoopPlan& plan, const CsrGraph& g,
                                       int level,
                                       std::span<const VertexId> matched,
                                       std::uint64_t* elements = nullptr);

/// Functional plan executor, no timing model. roots defaults to all vertices.
CountResult reference_count(const LoopPlan& plan, const CsrGraph& g,
                            const std::vector<VertexId>* roots = nullptr);

/// Injective edge-preserving maps pattern -> graph (brute force). Guarded to
/// graphs with at most 64 vertices.
std::uint64_t oracle_injective_maps(const Pattern& p, const CsrGraph& g,
                                    Semantics semantics);

/// oracle_injective_maps / |Aut(p)|; throws if not divisible.
std::uint64_t oracle_count(const Pattern& p, const CsrGraph& g,
                           Semantics semantics);

}  // namespace gpim
