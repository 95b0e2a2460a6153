#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpim/csr_graph.hpp"

namespace gpim {

class TopologyError : public std::runtime_error {
 public:
  explicit TopologyError(const std::string& what) : std::runtime_error(what) {}
};

enum class MappingKind { Default, LocalFirst };

/// Stacked-memory geometry and cost model. A PIM unit sits at one bank group;
/// unit ids are assigned channel-first: unit = bank_group * num_channels +
/// channel.
struct PimTopology {
  std::uint32_t num_channels = 32;
  std::uint32_t bank_groups_per_channel = 4;
  std::uint32_t banks_per_channel = 8;
  std::uint32_t block_bytes = 32;
  std::uint32_t lat_near = 10;
  std::uint32_t lat_intra = 40;
  std::uint32_t lat_inter = 140;
  std::uint32_t filter_setup = 2;
  std::uint32_t filters_per_bank_group = 2;
  std::uint32_t steal_overhead = 280;
  std::uint32_t compute_cycles_per_element = 1;
  bool bank_serialization = true;
  std::uint64_t capacity_bytes = 4ull << 30;
  double clock_hz = 250e6;

  std::uint32_t num_units() const { return num_channels * bank_groups_per_channel; }
  std::uint32_t banks_per_group() const {
    return banks_per_channel / bank_groups_per_channel;
  }
  std::uint64_t capacity_blocks() const { return capacity_bytes / block_bytes; }
  std::uint32_t total_banks() const { return num_channels * banks_per_channel; }

  /// Throws TopologyError when any structural invariant fails.
  void validate() const;
};

struct Location {
  std::uint32_t channel = 0;
  std::uint32_t bank_group = 0;
  std::uint32_t unit = 0;
  std::uint32_t bank_in_group = 0;
  std::uint64_t block_offset = 0;
};

enum class AccessTier { NearCore, IntraChannel, InterChannel };

/// unit id -> (channel, bank_group); ids run across channels first.
std::pair<std::uint32_t, std::uint32_t> unit_of(std::uint32_t unit_id,
                                                const PimTopology& topo);
std::uint32_t unit_id_of(std::uint32_t channel, std::uint32_t bank_group,
                         const PimTopology& topo);

/// Channel-interleaved layout: consecutive blocks rotate over channels, then
/// over the banks of one group, then over bank groups.
Location decode_default(std::uint64_t block_addr, const PimTopology& topo);

/// Contiguous-region layout: each unit owns capacity/num_units consecutive
/// blocks, striped over its own banks.
Location decode_local_first(std::uint64_t block_addr, const PimTopology& topo);

AccessTier classify_access(std::uint32_t requester_unit, const Location& target,
                           const PimTopology& topo);

std::uint32_t tier_latency(AccessTier tier, const PimTopology& topo);

/// One request latency plus a pipelined cycle per additional block.
std::uint64_t access_cost(AccessTier tier, std::uint64_t n_blocks,
                          const PimTopology& topo);

std::uint64_t blocks_for_bytes(std::uint64_t bytes, const PimTopology& topo);

enum class Cmp { Lt, Le, Gt, Ge };

struct FilterSpec {
  Cmp cmp = Cmp::Lt;
  VertexId th = 0;
  bool enabled = false;
};

struct FilterResult {
  std::vector<VertexId> kept;
  std::uint64_t filter_cycles = 0;
  std::uint64_t payload_blocks_saved = 0;
};

/// In-memory comparator over an ascending id stream. Throughput is
/// filters_per_bank_group ids per cycle after a fixed setup.
FilterResult filter_stream(std::span<const VertexId> values,
                           const FilterSpec& spec, const PimTopology& topo);

/// Per-bank busy-until bookkeeping. Requests are granted FIFO in arrival
/// order; the caller is responsible for presenting arrivals in order (the
/// simulator's event loop does).
class BankBusyTable {
 public:
  explicit BankBusyTable(const PimTopology& topo)
      : serialized_(topo.bank_serialization), free_at_(topo.total_banks(), 0) {}

  /// Returns the grant cycle and books the bank until grant + service.
  std::uint64_t acquire(std::uint32_t bank, std::uint64_t arrival,
                        std::uint64_t service);

 private:
  bool serialized_;
  std::vector<std::uint64_t> free_at_;
};

std::uint32_t global_bank(const Location& loc, const PimTopology& topo);

/// Flat key=value text, '#' comments; unknown keys are rejected.
PimTopology load_topology_file(const std::string& path);

}  // namespace gpim
