#pragma once

#include <string>

#include <json.hpp>

#include "gpim/simulator.hpp"

namespace gpim {

/// Fully-resolved run configuration echoed into every report so a run can be
/// reproduced from its output alone.
struct RunMeta {
  std::string graph;
  std::string pattern;
  std::string semantics;
  std::string mapping;
  bool filter = false;
  std::string duplication;
  bool stealing = false;
  double sample_ratio = 1.0;
  std::uint64_t seed = 0;
  std::string stage;  // set only for sweep rows
};

nlohmann::ordered_json topo_to_json(const PimTopology& topo);
nlohmann::ordered_json report_to_json(const SimReport& rep, const RunMeta& meta,
                                      const PimTopology& topo);

std::string csv_header(bool with_stage);
std::string csv_row(const SimReport& rep, const RunMeta& meta, bool with_stage);

}  // namespace gpim
