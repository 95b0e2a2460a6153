#include "gpim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpim/set_ops.hpp"

namespace gpim {

std::vector<VertexId> sample_roots(std::uint64_t n, double ratio) {
  if (!(ratio > 0.0) || ratio > 1.0)
    throw SimError("sample ratio must be in (0,1]");
  std::uint64_t stride =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(1.0 / ratio)));
  std::vector<VertexId> roots;
  for (std::uint64_t v = 0; v < n; v += stride)
    roots.push_back(static_cast<VertexId>(v));
  return roots;
}

double work_ratio(const WorkVector& full_work,
                  std::span<const VertexId> sampled, double fallback) {
  std::uint64_t total = full_work.total();
  if (total == 0) return fallback;
  std::uint64_t covered = 0;
  for (VertexId v : sampled) covered += full_work.per_root_work.at(v);
  return static_cast<double>(covered) / static_cast<double>(total);
}

std::uint64_t estimate_full_cycles(std::uint64_t sample_cycles, double r) {
  if (!(r > 0.0)) throw SimError("work ratio must be positive");
  return static_cast<std::uint64_t>(
      std::llround(static_cast<double>(sample_cycles) / r));
}

Placement make_placement(const CsrGraph& g, const PimTopology& topo,
                         const SimOptions& opts) {
  Placement pl = place_round_robin(g, topo, opts.mapping);
  std::uint64_t budget = 0;
  switch (opts.duplication.mode) {
    case DupMode::None:
      return pl;
    case DupMode::Bytes:
      budget = opts.duplication.bytes;
      break;
    case DupMode::Auto: {
      std::uint64_t owned = 4 * g.num_edges;
      budget = topo.capacity_bytes > owned
                   ? (topo.capacity_bytes - owned) / topo.num_units()
                   : 0;
      break;
    }
  }
  VertexId v_b = duplication_boundary(g, budget);
  return apply_duplication(std::move(pl), g, v_b, budget);
}

double cycles_to_seconds(std::uint64_t cycles, const PimTopology& topo) {
  return static_cast<double>(cycles) / topo.clock_hz;
}

namespace {

struct EngineUnit {
  std::uint64_t t = 0;
  std::vector<VertexId> roots;  // owned sampled roots, ascending
  std::size_t qpos = 0;

  bool has_ctx = false;
  VertexId v0 = 0;
  std::vector<VertexId> cands1;
  std::size_t next_chunk = 0;

  std::optional<VertexId> stolen_root;
  std::optional<std::pair<VertexId, std::uint32_t>> stolen_chunk;

  bool done = false;
};

class Engine {
 public:
  Engine(const CsrGraph& g, const LoopPlan& plan, const PimTopology& topo,
         const Placement& pl, const SimOptions& opts)
      : g_(g), plan_(plan), topo_(topo), pl_(pl), opts_(opts), busy_(topo),
        units_(topo.num_units()) {
    if (opts_.mapping == MappingKind::Default) {
      block_base_.resize(g_.num_vertices + 1, 0);
      for (VertexId v = 0; v < g_.num_vertices; ++v)
        block_base_[v + 1] =
            block_base_[v] +
            std::max<std::uint64_t>(1, blocks_for_bytes(g_.neighbor_bytes(v), topo_));
      if (block_base_.back() > topo_.capacity_blocks())
        throw SimError("graph exceeds topology capacity");
    }
  }

  void run(std::span<const VertexId> roots, SimReport& rep) {
    for (VertexId v : roots) units_[pl_.owner[v]].roots.push_back(v);
    while (true) {
      EngineUnit* next = nullptr;
      std::uint32_t id = 0;
      for (std::uint32_t u = 0; u < units_.size(); ++u) {
        EngineUnit& eu = units_[u];
        if (eu.done) continue;
        if (!next || eu.t < next->t) {
          next = &eu;
          id = u;
        }
      }
      if (!next) break;
      step(id);
    }
    rep.pattern_count = count_;
    rep.per_unit_cycles.resize(units_.size());
    for (std::uint32_t u = 0; u < units_.size(); ++u)
      rep.per_unit_cycles[u] = units_[u].t;
    rep.tiers = tiers_;
    rep.unfiltered_bytes = unfiltered_bytes_;
    rep.filtered_payload_blocks = saved_blocks_;
    rep.steal_count = steal_count_;
    rep.steal_level_histogram = steal_hist_;
    rep.double_victim_observed = double_victim_;
    if (opts_.collect_trace) rep.trace = std::move(trace_);
  }

 private:
  std::uint64_t blocks(std::uint64_t n_ids) const {
    return blocks_for_bytes(4 * n_ids, topo_);
  }

  void tally(AccessTier tier, std::uint64_t bytes) {
    switch (tier) {
      case AccessTier::NearCore:
        ++tiers_.near_accesses;
        tiers_.near_bytes += bytes;
        break;
      case AccessTier::IntraChannel:
        ++tiers_.intra_accesses;
        tiers_.intra_bytes += bytes;
        break;
      case AccessTier::InterChannel:
        ++tiers_.inter_accesses;
        tiers_.inter_bytes += bytes;
        break;
    }
  }

  // Striped transfer over the serving unit's own banks.
  std::uint64_t striped_fetch(std::uint32_t serving, AccessTier tier,
                              std::uint64_t payload, std::uint64_t start) {
    auto [ch, bg] = unit_of(serving, topo_);
    std::uint32_t bank0 = ch * topo_.banks_per_channel + bg * topo_.banks_per_group();
    std::uint64_t q =
        payload == 0 ? 1 : std::min<std::uint64_t>(topo_.banks_per_group(), payload);
    std::uint64_t completion = start;
    for (std::uint64_t i = 0; i < q; ++i) {
      std::uint64_t nb = payload / q + (i < payload % q ? 1 : 0);
      std::uint64_t service = access_cost(tier, std::max<std::uint64_t>(nb, 1), topo_);
      std::uint64_t grant =
          busy_.acquire(bank0 + static_cast<std::uint32_t>(i), start, service);
      completion = std::max(completion, grant + service);
      tally(tier, nb * topo_.block_bytes);
    }
    return completion;
  }

  // One neighbor-list fetch with tier classification, optional in-memory
  // filtering on remote transfers, and bank serialization. Returns the cycle
  // at which the list is available to the requester.
  std::uint64_t fetch(std::uint32_t u, VertexId v, std::optional<VertexId> th,
                      std::uint64_t start) {
    auto [serving, is_local] = pl_.resolve(u, v);
    bool local = v < pl_.dup_boundary[u] ||
                 (opts_.mapping == MappingKind::LocalFirst && is_local);
    auto nbrs = g_.neighbors(v);
    std::uint64_t full_blocks = blocks(nbrs.size());
    unfiltered_bytes_ += full_blocks * topo_.block_bytes;

    if (local)
      return striped_fetch(u, AccessTier::NearCore, full_blocks, start);

    std::uint64_t payload = full_blocks;
    std::uint64_t fcycles = 0;
    if (opts_.filter_on && th) {
      FilterResult fr =
          filter_stream(nbrs, {Cmp::Lt, *th, true}, topo_);
      payload = blocks(fr.kept.size());
      saved_blocks_ += fr.payload_blocks_saved;
      fcycles = fr.filter_cycles;
    }

    if (opts_.mapping == MappingKind::LocalFirst) {
      Location loc;
      loc.unit = serving;
      auto [ch, bg] = unit_of(serving, topo_);
      loc.channel = ch;
      loc.bank_group = bg;
      AccessTier tier = classify_access(u, loc, topo_);
      return striped_fetch(serving, tier, payload, start) + fcycles;
    }

    // Default interleave: the list's blocks scatter over channels; each block
    // is its own request.
    std::uint64_t base = block_base_[v];
    std::uint64_t completion = start;
    std::uint64_t requests = std::max<std::uint64_t>(1, payload);
    for (std::uint64_t j = 0; j < requests; ++j) {
      Location loc = decode_default(base + j, topo_);
      AccessTier tier = classify_access(u, loc, topo_);
      std::uint64_t service = access_cost(tier, 1, topo_);
      std::uint64_t grant = busy_.acquire(global_bank(loc, topo_), start, service);
      completion = std::max(completion, grant + service);
      tally(tier, payload == 0 ? 0 : topo_.block_bytes);
    }
    return completion + fcycles;
  }

  void recurse(std::uint32_t u, std::uint64_t& cursor,
               std::array<VertexId, kMaxPatternSize>& matched, int level) {
    std::uint64_t el = 0;
    auto cands = level_candidates(plan_, g_, level,
                                  std::span(matched.data(), level), &el);
    cursor += el * topo_.compute_cycles_per_element;
    for (VertexId v : cands) {
      bool dup = false;
      for (int j = 0; j < level; ++j)
        if (matched[j] == v) dup = true;
      if (dup) continue;
      if (level == plan_.depth - 1) {
        ++count_;
        continue;
      }
      matched[level] = v;
      if (plan_.slot_needed(level))
        cursor = fetch(u, v,
                       opts_.filter_on
                           ? plan_.fetch_threshold(level,
                                                   std::span(matched.data(), level + 1))
                           : std::nullopt,
                       cursor);
      recurse(u, cursor, matched, level + 1);
    }
  }

  void exec_chunk(std::uint32_t u, std::uint64_t& cursor, VertexId v0,
                  VertexId v1) {
    if (opts_.collect_trace) trace_.emplace_back(v0, v1);
    std::array<VertexId, kMaxPatternSize> matched{};
    matched[0] = v0;
    matched[1] = v1;
    if (plan_.depth == 2) {
      ++count_;
      return;
    }
    if (plan_.slot_needed(1))
      cursor = fetch(u, v1,
                     opts_.filter_on
                         ? plan_.fetch_threshold(1, std::span(matched.data(), 2))
                         : std::nullopt,
                     cursor);
    recurse(u, cursor, matched, 2);
  }

  // Fetch N(v0) and build the level-1 candidate list; shared by normal root
  // loads and by thieves rebuilding a stolen context.
  std::vector<VertexId> build_level1(std::uint32_t u, std::uint64_t& cursor,
                                     VertexId v0) {
    std::array<VertexId, kMaxPatternSize> matched{};
    matched[0] = v0;
    if (plan_.slot_needed(0))
      cursor = fetch(u, v0,
                     opts_.filter_on
                         ? plan_.fetch_threshold(0, std::span(matched.data(), 1))
                         : std::nullopt,
                     cursor);
    std::uint64_t el = 0;
    auto cands = level_candidates(plan_, g_, 1, std::span(matched.data(), 1), &el);
    cursor += el * topo_.compute_cycles_per_element;
    return cands;
  }

  bool stealable(const EngineUnit& eu) const {
    if (eu.done) return false;
    if (eu.qpos < eu.roots.size()) return true;
    return eu.has_ctx && eu.next_chunk < eu.cands1.size();
  }

  void attempt_steal(std::uint32_t id) {
    EngineUnit& thief = units_[id];
    SchedulerState sched(static_cast<std::uint32_t>(units_.size()));
    sched.state[id] = UnitState::Stealing;
    for (std::uint32_t w = 0; w < units_.size(); ++w) {
      if (w == id) continue;
      if (sched.state[w] == UnitState::BeingStolen) double_victim_ = true;
      sched.state[w] = stealable(units_[w]) ? UnitState::Executing : UnitState::Idle;
    }
    auto victim_id = find_victim(id, sched, topo_);
    if (!victim_id) {
      thief.done = true;
      return;
    }
    EngineUnit& victim = units_[*victim_id];
    int level;
    if (victim.qpos < victim.roots.size()) {
      thief.stolen_root = victim.roots[victim.qpos++];
      level = 0;
    } else {
      thief.stolen_chunk = {victim.v0,
                            static_cast<std::uint32_t>(victim.next_chunk++)};
      level = 1;
    }
    thief.t += topo_.steal_overhead;
    victim.t += topo_.steal_overhead;
    ++steal_count_;
    ++steal_hist_[level];
  }

  void step(std::uint32_t id) {
    EngineUnit& eu = units_[id];
    std::uint64_t cursor = eu.t;
    if (eu.stolen_root) {
      eu.v0 = *eu.stolen_root;
      eu.stolen_root.reset();
      eu.cands1 = build_level1(id, cursor, eu.v0);
      eu.next_chunk = 0;
      eu.has_ctx = !eu.cands1.empty();
    } else if (eu.stolen_chunk) {
      auto [v0, c] = *eu.stolen_chunk;
      eu.stolen_chunk.reset();
      auto cands = build_level1(id, cursor, v0);
      if (c < cands.size()) exec_chunk(id, cursor, v0, cands[c]);
    } else if (eu.has_ctx && eu.next_chunk < eu.cands1.size()) {
      VertexId v1 = eu.cands1[eu.next_chunk++];
      exec_chunk(id, cursor, eu.v0, v1);
      if (eu.next_chunk == eu.cands1.size()) eu.has_ctx = false;
    } else if (eu.qpos < eu.roots.size()) {
      eu.v0 = eu.roots[eu.qpos++];
      eu.cands1 = build_level1(id, cursor, eu.v0);
      eu.next_chunk = 0;
      eu.has_ctx = !eu.cands1.empty();
    } else if (opts_.stealing_on) {
      attempt_steal(id);
    } else {
      eu.done = true;
    }
    eu.t = std::max(eu.t, cursor);
  }

  const CsrGraph& g_;
  const LoopPlan& plan_;
  const PimTopology& topo_;
  const Placement& pl_;
  const SimOptions& opts_;
  BankBusyTable busy_;
  std::vector<EngineUnit> units_;
  std::vector<std::uint64_t> block_base_;

  std::uint64_t count_ = 0;
  TierTally tiers_;
  std::uint64_t unfiltered_bytes_ = 0;
  std::uint64_t saved_blocks_ = 0;
  std::uint64_t steal_count_ = 0;
  std::array<std::uint64_t, kMaxPatternSize> steal_hist_{};
  bool double_victim_ = false;
  std::vector<std::pair<VertexId, VertexId>> trace_;
};

}  // namespace

SimReport simulate(const CsrGraph& g, const LoopPlan& plan,
                   const PimTopology& topo, const Placement& placement,
                   const SimOptions& opts) {
  topo.validate();
  if (placement.num_units != topo.num_units())
    throw SimError("placement does not match topology");
  if (placement.owner.size() != g.num_vertices)
    throw SimError("placement does not match graph");

  auto roots = sample_roots(g.num_vertices, opts.sample_ratio);

  SimReport rep;
  Engine engine(g, plan, topo, placement, opts);
  engine.run(roots, rep);

  rep.sampled_roots = roots.size();
  rep.exe_cycles = rep.per_unit_cycles.empty()
                       ? 0
                       : *std::max_element(rep.per_unit_cycles.begin(),
                                           rep.per_unit_cycles.end());
  double sum = std::accumulate(rep.per_unit_cycles.begin(),
                               rep.per_unit_cycles.end(), 0.0);
  rep.avg_cycles =
      rep.per_unit_cycles.empty() ? 0 : sum / rep.per_unit_cycles.size();
  rep.exe_avg_ratio =
      rep.avg_cycles > 0 ? rep.exe_cycles / rep.avg_cycles : 0;

  std::uint64_t total_acc = rep.tiers.total_accesses();
  rep.local_access_ratio =
      total_acc ? static_cast<double>(rep.tiers.near_accesses) / total_acc : 0;

  std::uint64_t transferred_blocks = rep.tiers.total_bytes() / topo.block_bytes;
  std::uint64_t denom = rep.filtered_payload_blocks + transferred_blocks;
  rep.filtered_ratio =
      denom ? static_cast<double>(rep.filtered_payload_blocks) / denom : 0;

  auto full = reference_count(plan, g);
  rep.work_ratio_r = work_ratio(full.work, roots, opts.sample_ratio);
  rep.estimated_full_cycles = estimate_full_cycles(rep.exe_cycles, rep.work_ratio_r);

  rep.dup_boundary = placement.dup_boundary.empty() ? 0 : placement.dup_boundary[0];
  rep.dup_copy_bytes = placement.dup_copy_bytes;
  rep.unit_bytes_used = placement.bytes_used;
  return rep;
}

}  // namespace gpim
