#include "gpim/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gpim {

void PimTopology::validate() const {
  auto req = [](bool ok, const char* msg) {
    if (!ok) throw TopologyError(msg);
  };
  req(num_channels >= 1, "num_channels must be >= 1");
  req(bank_groups_per_channel >= 1, "bank_groups_per_channel must be >= 1");
  req(banks_per_channel >= 1, "banks_per_channel must be >= 1");
  req(banks_per_channel % bank_groups_per_channel == 0,
      "banks_per_channel must be divisible by bank_groups_per_channel");
  req(block_bytes >= 1, "block_bytes must be >= 1");
  req(lat_near <= lat_intra && lat_intra <= lat_inter,
      "latency tiers must be ordered near <= intra <= inter");
  req(filters_per_bank_group >= 1, "filters_per_bank_group must be >= 1");
  req(capacity_bytes >= block_bytes, "capacity below one block");
  req(capacity_bytes % block_bytes == 0,
      "capacity_bytes must be a multiple of block_bytes");
  std::uint64_t blocks = capacity_blocks();
  req(blocks % num_units() == 0,
      "capacity_blocks must be divisible by num_units");
  req(blocks % (std::uint64_t{num_channels} * banks_per_channel) == 0,
      "capacity_blocks must be divisible by the bank count");
  req(clock_hz > 0, "clock_hz must be positive");
}

std::pair<std::uint32_t, std::uint32_t> unit_of(std::uint32_t unit_id,
                                                const PimTopology& topo) {
  if (unit_id >= topo.num_units()) throw TopologyError("unit id out of range");
  return {unit_id % topo.num_channels, unit_id / topo.num_channels};
}

std::uint32_t unit_id_of(std::uint32_t channel, std::uint32_t bank_group,
                         const PimTopology& topo) {
  if (channel >= topo.num_channels ||
      bank_group >= topo.bank_groups_per_channel)
    throw TopologyError("channel or bank group out of range");
  return bank_group * topo.num_channels + channel;
}

Location decode_default(std::uint64_t block_addr, const PimTopology& topo) {
  if (block_addr >= topo.capacity_blocks())
    throw TopologyError("block address out of range");
  const std::uint64_t c = topo.num_channels;
  const std::uint64_t bpg = topo.banks_per_group();
  Location loc;
  loc.channel = static_cast<std::uint32_t>(block_addr % c);
  loc.bank_in_group = static_cast<std::uint32_t>((block_addr / c) % bpg);
  loc.bank_group = static_cast<std::uint32_t>((block_addr / (c * bpg)) %
                                              topo.bank_groups_per_channel);
  loc.block_offset = block_addr / (c * bpg * topo.bank_groups_per_channel);
  loc.unit = unit_id_of(loc.channel, loc.bank_group, topo);
  return loc;
}

Location decode_local_first(std::uint64_t block_addr, const PimTopology& topo) {
  if (block_addr >= topo.capacity_blocks())
    throw TopologyError("block address out of range");
  const std::uint64_t region = topo.capacity_blocks() / topo.num_units();
  const std::uint64_t bpg = topo.banks_per_group();
  Location loc;
  loc.unit = static_cast<std::uint32_t>(block_addr / region);
  auto [ch, bg] = unit_of(loc.unit, topo);
  loc.channel = ch;
  loc.bank_group = bg;
  const std::uint64_t within = block_addr % region;
  loc.bank_in_group = static_cast<std::uint32_t>(within % bpg);
  loc.block_offset = within / bpg;
  return loc;
}

AccessTier classify_access(std::uint32_t requester_unit, const Location& target,
                           const PimTopology& topo) {
  if (requester_unit >= topo.num_units())
    throw TopologyError("requester unit out of range");
  if (target.unit == requester_unit) return AccessTier::NearCore;
  auto [ch, bg] = unit_of(requester_unit, topo);
  (void)bg;
  if (target.channel == ch) return AccessTier::IntraChannel;
  return AccessTier::InterChannel;
}

std::uint32_t tier_latency(AccessTier tier, const PimTopology& topo) {
  switch (tier) {
    case AccessTier::NearCore: return topo.lat_near;
    case AccessTier::IntraChannel: return topo.lat_intra;
    case AccessTier::InterChannel: return topo.lat_inter;
  }
  throw TopologyError("bad tier");
}

std::uint64_t access_cost(AccessTier tier, std::uint64_t n_blocks,
                          const PimTopology& topo) {
  if (n_blocks < 1) throw TopologyError("access of zero blocks");
  return tier_latency(tier, topo) + (n_blocks - 1);
}

std::uint64_t blocks_for_bytes(std::uint64_t bytes, const PimTopology& topo) {
  return (bytes + topo.block_bytes - 1) / topo.block_bytes;
}

FilterResult filter_stream(std::span<const VertexId> values,
                           const FilterSpec& spec, const PimTopology& topo) {
  if (!spec.enabled) throw TopologyError("filter_stream requires enabled spec");
  if (!std::is_sorted(values.begin(), values.end()) ||
      std::adjacent_find(values.begin(), values.end()) != values.end())
    throw TopologyError("filter_stream input must be strictly ascending");
  FilterResult res;
  auto pass = [&](VertexId v) {
    switch (spec.cmp) {
      case Cmp::Lt: return v < spec.th;
      case Cmp::Le: return v <= spec.th;
      case Cmp::Gt: return v > spec.th;
      case Cmp::Ge: return v >= spec.th;
    }
    return false;
  };
  for (VertexId v : values)
    if (pass(v)) res.kept.push_back(v);
  res.filter_cycles =
      topo.filter_setup +
      (values.size() + topo.filters_per_bank_group - 1) /
          topo.filters_per_bank_group;
  res.payload_blocks_saved = blocks_for_bytes(4 * values.size(), topo) -
                             blocks_for_bytes(4 * res.kept.size(), topo);
  return res;
}

std::uint64_t BankBusyTable::acquire(std::uint32_t bank, std::uint64_t arrival,
                                     std::uint64_t service) {
  if (!serialized_) return arrival;
  std::uint64_t grant = std::max(arrival, free_at_.at(bank));
  free_at_[bank] = grant + service;
  return grant;
}

std::uint32_t global_bank(const Location& loc, const PimTopology& topo) {
  return loc.channel * topo.banks_per_channel +
         loc.bank_group * topo.banks_per_group() + loc.bank_in_group;
}

PimTopology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TopologyError("cannot open topology file: " + path);
  PimTopology topo;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw TopologyError("line " + std::to_string(lineno) +
                          ": expected key=value");
    std::string key = trimmed.substr(0, eq);
    std::string val = trimmed.substr(eq + 1);
    auto as_u64 = [&]() -> std::uint64_t {
      std::size_t pos = 0;
      std::uint64_t v = std::stoull(val, &pos);
      if (pos != val.size())
        throw TopologyError("line " + std::to_string(lineno) +
                            ": bad number for " + key);
      return v;
    };
    try {
      if (key == "num_channels") topo.num_channels = as_u64();
      else if (key == "bank_groups_per_channel") topo.bank_groups_per_channel = as_u64();
      else if (key == "banks_per_channel") topo.banks_per_channel = as_u64();
      else if (key == "block_bytes") topo.block_bytes = as_u64();
      else if (key == "lat_near") topo.lat_near = as_u64();
      else if (key == "lat_intra") topo.lat_intra = as_u64();
      else if (key == "lat_inter") topo.lat_inter = as_u64();
      else if (key == "filter_setup") topo.filter_setup = as_u64();
      else if (key == "filters_per_bank_group") topo.filters_per_bank_group = as_u64();
      else if (key == "steal_overhead") topo.steal_overhead = as_u64();
      else if (key == "compute_cycles_per_element") topo.compute_cycles_per_element = as_u64();
      else if (key == "bank_serialization") topo.bank_serialization = (val == "on" || val == "1" || val == "true");
      else if (key == "capacity_bytes") topo.capacity_bytes = as_u64();
      else if (key == "clock_hz") topo.clock_hz = std::stod(val);
      else throw TopologyError("line " + std::to_string(lineno) + ": unknown key " + key);
    } catch (const std::invalid_argument&) {
      throw TopologyError("line " + std::to_string(lineno) + ": bad value for " + key);
    } catch (const std::out_of_range&) {
      throw TopologyError("line " + std::to_string(lineno) + ": value out of range for " + key);
    }
  }
  topo.validate();
  return topo;
}

}  // namespace gpim
