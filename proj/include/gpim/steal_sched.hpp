#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gpim/pattern.hpp"
#include "gpim/topology.hpp"

namespace gpim {

inline constexpr int kNullIndex = -1;

/// Per-unit loop-index tables. Level 0 indexes the root domain; level i >= 1
/// indexes the level-i candidate list. exec holds the running task, sched the
/// next one.
struct UnitTables {
  int depth = 0;
  std::array<int, kMaxPatternSize> exec{};
  std::array<int, kMaxPatternSize> sched{};

  bool sched_empty() const {
    for (int i = 0; i < depth; ++i)
      if (sched[i] != kNullIndex) return false;
    return true;
  }
};

/// 2-bit unit states of the stealing scheduler.
enum class UnitState : std::uint8_t {
  Idle = 0b00,
  Executing = 0b01,
  Stealing = 0b10,
  BeingStolen = 0b11,
};

inline constexpr std::uint32_t kNoUnit = UINT32_MAX;

struct SchedulerState {
  std::vector<UnitState> state;
  std::vector<std::uint32_t> related;  // victim when stealing, thief when stolen

  explicit SchedulerState(std::uint32_t num_units)
      : state(num_units, UnitState::Idle), related(num_units, kNoUnit) {}
};

struct StealEvent {
  std::uint32_t thief = 0;
  std::uint32_t victim = 0;
  int level = 0;
  std::uint64_t cycles_charged = 0;
};

/// sched[0] = the unit's first root (round-robin residue class); everything
/// else starts NULL.
UnitTables init_tables(std::uint32_t unit_id, int plan_depth,
                       const PimTopology& topo);

/// Copies the deepest non-NULL sched entry into exec. False when sched is
/// entirely NULL (the unit should go steal).
bool load_task(UnitTables& t);

/// Advances sched past the task in exec: the deepest non-exhausted level
/// steps by 1 (level 0 by num_units), exhausted deeper levels reset to NULL.
/// Falling off the root domain empties the tables.
void update_schedule(UnitTables& t, std::span<const std::uint64_t> level_lengths,
                     std::uint32_t num_units, std::uint64_t root_domain);

/// First unit in state Executing, scanning the thief's own channel by
/// ascending unit id, then the following channels in ascending order with
/// wraparound. Nullopt when no unit anywhere is executing.
std::optional<std::uint32_t> find_victim(std::uint32_t thief,
                                         const SchedulerState& sched,
                                         const PimTopology& topo);

/// Transfers the shallowest stealable sched level from victim to thief:
/// deeper thief levels restart at index 0, shallower exec context is copied,
/// and the victim's entry advances (num_units at level 0, else 1). Both sides
/// pay steal_overhead. Nullopt when the victim had nothing left.
std::optional<StealEvent> steal(UnitTables& thief_t, UnitTables& victim_t,
                                std::uint32_t thief, std::uint32_t victim,
                                std::uint32_t num_units,
                                const PimTopology& topo);

}  // namespace gpim
