#include "gpim/report_io.hpp"

#include <cstdio>
#include <sstream>

namespace gpim {

using nlohmann::ordered_json;

ordered_json topo_to_json(const PimTopology& topo) {
  ordered_json j;
  j["num_channels"] = topo.num_channels;
  j["bank_groups_per_channel"] = topo.bank_groups_per_channel;
  j["banks_per_channel"] = topo.banks_per_channel;
  j["block_bytes"] = topo.block_bytes;
  j["lat_near"] = topo.lat_near;
  j["lat_intra"] = topo.lat_intra;
  j["lat_inter"] = topo.lat_inter;
  j["filter_setup"] = topo.filter_setup;
  j["filters_per_bank_group"] = topo.filters_per_bank_group;
  j["steal_overhead"] = topo.steal_overhead;
  j["compute_cycles_per_element"] = topo.compute_cycles_per_element;
  j["bank_serialization"] = topo.bank_serialization;
  j["capacity_bytes"] = topo.capacity_bytes;
  j["clock_hz"] = topo.clock_hz;
  return j;
}

ordered_json report_to_json(const SimReport& rep, const RunMeta& meta,
                            const PimTopology& topo) {
  ordered_json cfg;
  cfg["graph"] = meta.graph;
  cfg["pattern"] = meta.pattern;
  cfg["semantics"] = meta.semantics;
  cfg["mapping"] = meta.mapping;
  cfg["filter"] = meta.filter;
  cfg["duplication"] = meta.duplication;
  cfg["stealing"] = meta.stealing;
  cfg["sample_ratio"] = meta.sample_ratio;
  cfg["seed"] = meta.seed;
  if (!meta.stage.empty()) cfg["stage"] = meta.stage;
  cfg["topology"] = topo_to_json(topo);

  ordered_json res;
  res["pattern_count"] = rep.pattern_count;
  res["exe_cycles"] = rep.exe_cycles;
  res["avg_cycles"] = rep.avg_cycles;
  res["exe_avg_ratio"] = rep.exe_avg_ratio;
  res["exe_seconds"] = cycles_to_seconds(rep.exe_cycles, topo);
  ordered_json tiers;
  tiers["near_accesses"] = rep.tiers.near_accesses;
  tiers["intra_accesses"] = rep.tiers.intra_accesses;
  tiers["inter_accesses"] = rep.tiers.inter_accesses;
  tiers["near_bytes"] = rep.tiers.near_bytes;
  tiers["intra_bytes"] = rep.tiers.intra_bytes;
  tiers["inter_bytes"] = rep.tiers.inter_bytes;
  res["tiers"] = tiers;
  res["local_access_ratio"] = rep.local_access_ratio;
  res["unfiltered_bytes"] = rep.unfiltered_bytes;
  res["filtered_payload_blocks"] = rep.filtered_payload_blocks;
  res["filtered_ratio"] = rep.filtered_ratio;
  res["steal_count"] = rep.steal_count;
  ordered_json hist = ordered_json::array();
  for (auto h : rep.steal_level_histogram) hist.push_back(h);
  res["steal_level_histogram"] = hist;
  res["sampled_roots"] = rep.sampled_roots;
  res["work_ratio_r"] = rep.work_ratio_r;
  res["estimated_full_cycles"] = rep.estimated_full_cycles;
  res["dup_boundary"] = rep.dup_boundary;
  res["dup_copy_bytes"] = rep.dup_copy_bytes;
  res["unit_bytes_used"] = rep.unit_bytes_used;
  res["per_unit_cycles"] = rep.per_unit_cycles;

  ordered_json j;
  j["config"] = cfg;
  j["results"] = res;
  return j;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double frac(std::uint64_t part, std::uint64_t whole) {
  return whole ? static_cast<double>(part) / static_cast<double>(whole) : 0.0;
}

}  // namespace

std::string csv_header(bool with_stage) {
  std::string h;
  if (with_stage) h += "stage,";
  h +=
      "graph,pattern,semantics,mapping,filter,duplication,stealing,"
      "sample_ratio,seed,pattern_count,exe_cycles,avg_cycles,exe_avg_ratio,"
      "near_frac,intra_frac,inter_frac,local_access_ratio,"
      "filtered_blocks_saved,filtered_ratio,steal_events,sampled_roots,"
      "work_ratio_r,estimated_full_cycles";
  return h;
}

std::string csv_row(const SimReport& rep, const RunMeta& meta, bool with_stage) {
  std::uint64_t total = rep.tiers.total_accesses();
  std::ostringstream out;
  if (with_stage) out << meta.stage << ',';
  out << meta.graph << ',' << meta.pattern << ',' << meta.semantics << ','
      << meta.mapping << ',' << (meta.filter ? "on" : "off") << ','
      << meta.duplication << ',' << (meta.stealing ? "on" : "off") << ','
      << fmt(meta.sample_ratio) << ',' << meta.seed << ',' << rep.pattern_count
      << ',' << rep.exe_cycles << ',' << fmt(rep.avg_cycles) << ','
      << fmt(rep.exe_avg_ratio) << ',' << fmt(frac(rep.tiers.near_accesses, total))
      << ',' << fmt(frac(rep.tiers.intra_accesses, total)) << ','
      << fmt(frac(rep.tiers.inter_accesses, total)) << ','
      << fmt(rep.local_access_ratio) << ',' << rep.filtered_payload_blocks << ','
      << fmt(rep.filtered_ratio) << ',' << rep.steal_count << ','
      << rep.sampled_roots << ',' << fmt(rep.work_ratio_r) << ','
      << rep.estimated_full_cycles;
  return out.str();
}

}  // namespace gpim
