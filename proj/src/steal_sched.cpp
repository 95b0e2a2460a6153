#include "gpim/steal_sched.hpp"

namespace gpim {

UnitTables init_tables(std::uint32_t unit_id, int plan_depth,
                       const PimTopology& topo) {
  if (unit_id >= topo.num_units()) throw TopologyError("unit id out of range");
  if (plan_depth < 1 || plan_depth > kMaxPatternSize)
    throw TopologyError("plan depth out of range");
  UnitTables t;
  t.depth = plan_depth;
  t.exec.fill(kNullIndex);
  t.sched.fill(kNullIndex);
  t.sched[0] = static_cast<int>(unit_id);
  return t;
}

bool load_task(UnitTables& t) {
  for (int level = t.depth - 1; level >= 0; --level)
    if (t.sched[level] != kNullIndex) {
      t.exec[level] = t.sched[level];
      return true;
    }
  return false;
}

void update_schedule(UnitTables& t, std::span<const std::uint64_t> level_lengths,
                     std::uint32_t num_units, std::uint64_t root_domain) {
  int top = t.depth - 1;
  while (top >= 0 && t.exec[top] == kNullIndex) --top;
  for (int level = top; level >= 0; --level) {
    std::uint64_t stride = level == 0 ? num_units : 1;
    std::uint64_t next = static_cast<std::uint64_t>(t.exec[level]) + stride;
    std::uint64_t bound = level == 0 ? root_domain : level_lengths[level];
    if (next < bound) {
      for (int i = 0; i < level; ++i) t.sched[i] = t.exec[i];
      t.sched[level] = static_cast<int>(next);
      for (int i = level + 1; i < t.depth; ++i) t.sched[i] = kNullIndex;
      return;
    }
  }
  t.sched.fill(kNullIndex);
  t.exec.fill(kNullIndex);
}

std::optional<std::uint32_t> find_victim(std::uint32_t thief,
                                         const SchedulerState& sched,
                                         const PimTopology& topo) {
  const std::uint32_t c = topo.num_channels;
  const std::uint32_t g = topo.bank_groups_per_channel;
  auto [home, bg] = unit_of(thief, topo);
  (void)bg;
  for (std::uint32_t dc = 0; dc < c; ++dc) {
    std::uint32_t ch = (home + dc) % c;
    // Units of one channel are ch, ch + c, ... : ascending id order.
    for (std::uint32_t k = 0; k < g; ++k) {
      std::uint32_t u = k * c + ch;
      if (u == thief) continue;
      if (sched.state[u] == UnitState::Executing) return u;
    }
  }
  return std::nullopt;
}

std::optional<StealEvent> steal(UnitTables& thief_t, UnitTables& victim_t,
                                std::uint32_t thief, std::uint32_t victim,
                                std::uint32_t num_units,
                                const PimTopology& topo) {
  int level = 0;
  while (level < victim_t.depth && victim_t.sched[level] == kNullIndex) ++level;
  if (level == victim_t.depth) return std::nullopt;

  thief_t.depth = victim_t.depth;
  for (int i = 0; i < level; ++i) {
    thief_t.sched[i] = kNullIndex;
    thief_t.exec[i] = victim_t.exec[i];
  }
  thief_t.sched[level] = victim_t.sched[level];
  for (int i = level + 1; i < thief_t.depth; ++i) thief_t.sched[i] = 0;

  victim_t.sched[level] += level == 0 ? static_cast<int>(num_units) : 1;

  StealEvent ev;
  ev.thief = thief;
  ev.victim = victim;
  ev.level = level;
  ev.cycles_charged = topo.steal_overhead;
  return ev;
}

}  // namespace gpim
