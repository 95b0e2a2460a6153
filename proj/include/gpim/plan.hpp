#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gpim/csr_graph.hpp"
#include "gpim/pattern.hpp"

namespace gpim {

class PlanError : public std::runtime_error {
 public:
  explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

enum class Semantics { Induced, NonInduced };

/// Per-level candidate set expression: intersect the neighbor lists of the
/// positive sources, subtract those of the negative sources. Negative sources
/// are populated only under induced semantics.
struct SetExpr {
  int level = 0;
  std::vector<int> positive_sources;
  std::vector<int> negative_sources;
};

/// v_smaller < v_larger on matched vertex ids.
struct Restriction {
  int smaller = 0;
  int larger = 0;
  friend bool operator==(const Restriction&, const Restriction&) = default;
};

/// Compiled nested-loop matching plan. Executing it on any graph yields the
/// unlabeled embedding count exactly once per embedding; compile_plan verifies
/// this against the brute-force oracle before returning.
struct LoopPlan {
  Pattern pattern;
  Semantics semantics = Semantics::NonInduced;
  std::array<int, kMaxPatternSize> order{};  // level -> original pattern vertex
  std::vector<SetExpr> set_exprs;            // levels 1 .. depth-1
  std::vector<Restriction> restrictions;
  int depth = 0;

  /// Per matched slot: restriction variables whose runtime minimum is a sound
  /// filter threshold for the fetched neighbor list across all consuming
  /// levels. Empty means the fetch must not be filtered.
  std::array<std::vector<int>, kMaxPatternSize> fetch_bound_vars{};

  const SetExpr& expr(int level) const { return set_exprs[level - 1]; }

  /// Upper bound on candidates at `level` (exclusive), from restrictions whose
  /// smaller side is this level; nullopt when unrestricted.
  std::optional<VertexId> level_bound(int level,
                                      std::span<const VertexId> matched) const;

  /// Filter threshold for fetching N(matched[slot]); nullopt when the fetch
  /// cannot be filtered soundly.
  std::optional<VertexId> fetch_threshold(
      int slot, std::span<const VertexId> matched) const;

  /// Whether N(v_slot) is consumed by any deeper level's set expression.
  bool slot_needed(int slot) const;
};

/// Compile a pattern into a validated plan: max-degree-first connected order,
/// set expressions from the adjacency, restrictions from automorphisms (one
/// per non-identity automorphism at its first moved position, transitively
/// pruned), then oracle-checked on seeded random graphs.
LoopPlan compile_plan(const Pattern& p, Semantics semantics);

}  // namespace gpim
