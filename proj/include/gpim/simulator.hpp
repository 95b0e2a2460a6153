#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gpim/csr_graph.hpp"
#include "gpim/executor.hpp"
#include "gpim/placement.hpp"
#include "gpim/plan.hpp"
#include "gpim/steal_sched.hpp"
#include "gpim/topology.hpp"

namespace gpim {

class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

enum class DupMode { None, Auto, Bytes };

struct DupBudget {
  DupMode mode = DupMode::None;
  std::uint64_t bytes = 0;
};

struct SimOptions {
  MappingKind mapping = MappingKind::Default;
  bool filter_on = false;
  DupBudget duplication;
  bool stealing_on = false;
  double sample_ratio = 1.0;
  std::uint64_t seed = 0;
  bool collect_trace = false;
};

struct TierTally {
  std::uint64_t near_accesses = 0, intra_accesses = 0, inter_accesses = 0;
  std::uint64_t near_bytes = 0, intra_bytes = 0, inter_bytes = 0;

  std::uint64_t total_accesses() const {
    return near_accesses + intra_accesses + inter_accesses;
  }
  std::uint64_t total_bytes() const {
    return near_bytes + intra_bytes + inter_bytes;
  }
};

struct SimReport {
  std::uint64_t pattern_count = 0;
  std::vector<std::uint64_t> per_unit_cycles;
  std::uint64_t exe_cycles = 0;
  double avg_cycles = 0;
  double exe_avg_ratio = 0;

  TierTally tiers;
  double local_access_ratio = 0;

  std::uint64_t unfiltered_bytes = 0;
  std::uint64_t filtered_payload_blocks = 0;
  double filtered_ratio = 0;

  std::uint64_t steal_count = 0;
  std::array<std::uint64_t, kMaxPatternSize> steal_level_histogram{};
  bool double_victim_observed = false;

  std::uint64_t sampled_roots = 0;
  double work_ratio_r = 1.0;
  std::uint64_t estimated_full_cycles = 0;

  VertexId dup_boundary = 0;
  std::uint64_t dup_copy_bytes = 0;
  std::vector<std::uint64_t> unit_bytes_used;

  // (v0, v1) per executed level-1 chunk, only when opts.collect_trace.
  std::vector<std::pair<VertexId, VertexId>> trace;
};

/// Deterministic strided root selection: every round(1/ratio)-th vertex.
std::vector<VertexId> sample_roots(std::uint64_t n, double ratio);

/// Fraction of total loop work covered by the sampled roots. Zero total work
/// degenerates to `fallback`.
double work_ratio(const WorkVector& full_work,
                  std::span<const VertexId> sampled, double fallback);

/// sample_cycles / r, rounded to nearest. Throws on r <= 0.
std::uint64_t estimate_full_cycles(std::uint64_t sample_cycles, double r);

/// Round-robin placement plus the duplication requested in opts.
Placement make_placement(const CsrGraph& g, const PimTopology& topo,
                         const SimOptions& opts);

/// Cycle-level run of the plan over all units. Deterministic in its inputs.
SimReport simulate(const CsrGraph& g, const LoopPlan& plan,
                   const PimTopology& topo, const Placement& placement,
                   const SimOptions& opts);

double cycles_to_seconds(std::uint64_t cycles, const PimTopology& topo);

}  // namespace gpim
