#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpim/graph_gen.hpp"
#include "gpim/report_io.hpp"
#include "gpim/simulator.hpp"

namespace {

using namespace gpim;

struct CommonArgs {
  std::string graph_path;
  std::string format = "edgelist";
  std::string pattern = "3cc";
  std::string semantics = "noninduced";
};

struct SimArgs {
  std::string mapping = "default";
  std::string filter = "off";
  std::string duplication = "none";
  std::string stealing = "off";
  double sample_ratio = 1.0;
  std::uint64_t seed = 0;
  std::string topo_path;
  std::string out_path;
  std::string emit = "json";
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--graph", a.graph_path, "input graph file")->required();
  cmd->add_option("--format", a.format, "graph file format")
      ->check(CLI::IsMember({"edgelist", "csr"}));
  cmd->add_option("--pattern", a.pattern, "pattern name")
      ->check(CLI::IsMember({"3cc", "4cc", "5cc", "3mc", "4di", "4cl"}));
  cmd->add_option("--semantics", a.semantics, "match semantics")
      ->check(CLI::IsMember({"induced", "noninduced"}));
}

void add_sim(CLI::App* cmd, SimArgs& a) {
  cmd->add_option("--mapping", a.mapping, "address mapping")
      ->check(CLI::IsMember({"default", "local-first"}));
  cmd->add_option("--filter", a.filter, "in-memory access filter")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--duplication", a.duplication,
                  "duplication budget: none, auto or bytes")
      ->check([](const std::string& v) -> std::string {
        if (v == "none" || v == "auto") return {};
        try {
          std::size_t pos = 0;
          (void)std::stoull(v, &pos);
          if (pos == v.size()) return {};
        } catch (...) {
        }
        return "expected none, auto or a byte count";
      });
  cmd->add_option("--stealing", a.stealing, "work stealing")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--sample-ratio", a.sample_ratio, "root sampling ratio")
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--seed", a.seed, "run seed echoed into reports");
  cmd->add_option("--topo", a.topo_path, "topology key=value file");
  cmd->add_option("--out", a.out_path, "output file (default stdout)");
  cmd->add_option("--emit", a.emit, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
}

CsrGraph load_graph(const CommonArgs& a) {
  std::ifstream in(a.graph_path, std::ios::binary);
  if (!in) throw GraphError("cannot open graph file: " + a.graph_path);
  CsrGraph g = a.format == "csr" ? load_csr_binary(in) : load_edge_list(in);
  return normalize_degree_order(g).first;
}

std::vector<std::string> pattern_list(const std::string& name) {
  if (name == "3mc") return {"3cc", "wedge"};
  return {name};
}

Semantics parse_semantics(const std::string& s) {
  return s == "induced" ? Semantics::Induced : Semantics::NonInduced;
}

SimOptions parse_sim_options(const SimArgs& a) {
  SimOptions opts;
  opts.mapping =
      a.mapping == "local-first" ? MappingKind::LocalFirst : MappingKind::Default;
  opts.filter_on = a.filter == "on";
  opts.stealing_on = a.stealing == "on";
  opts.sample_ratio = a.sample_ratio;
  opts.seed = a.seed;
  if (a.duplication == "none") {
    opts.duplication.mode = DupMode::None;
  } else if (a.duplication == "auto") {
    opts.duplication.mode = DupMode::Auto;
  } else {
    std::size_t pos = 0;
    std::uint64_t bytes = std::stoull(a.duplication, &pos);
    if (pos != a.duplication.size())
      throw CLI::ValidationError("--duplication",
                                 "expected none, auto or a byte count");
    opts.duplication = {DupMode::Bytes, bytes};
  }
  return opts;
}

PimTopology resolve_topology(const SimArgs& a) {
  PimTopology topo =
      a.topo_path.empty() ? PimTopology{} : load_topology_file(a.topo_path);
  topo.validate();
  return topo;
}

RunMeta make_meta(const CommonArgs& c, const SimArgs& s,
                  const std::string& pattern, const std::string& stage = "") {
  RunMeta m;
  m.graph = c.graph_path;
  m.pattern = pattern;
  m.semantics = c.semantics;
  m.mapping = s.mapping;
  m.filter = s.filter == "on";
  m.duplication = s.duplication;
  m.stealing = s.stealing == "on";
  m.sample_ratio = s.sample_ratio;
  m.seed = s.seed;
  m.stage = stage;
  return m;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

int cmd_count(const CommonArgs& c) {
  CsrGraph g = load_graph(c);
  Semantics sem = parse_semantics(c.semantics);
  for (const auto& name : pattern_list(c.pattern)) {
    auto plan = compile_plan(builtin_pattern(name), sem);
    auto res = reference_count(plan, g);
    if (c.pattern == "3mc")
      std::cout << (name == "3cc" ? "triangle " : "wedge ") << res.count << '\n';
    else
      std::cout << res.count << '\n';
  }
  return 0;
}

int cmd_simulate(const CommonArgs& c, const SimArgs& s) {
  CsrGraph g = load_graph(c);
  Semantics sem = parse_semantics(c.semantics);
  PimTopology topo = resolve_topology(s);
  SimOptions opts = parse_sim_options(s);
  Placement pl = make_placement(g, topo, opts);

  std::vector<std::pair<RunMeta, SimReport>> runs;
  for (const auto& name : pattern_list(c.pattern)) {
    auto plan = compile_plan(builtin_pattern(name), sem);
    runs.emplace_back(make_meta(c, s, name), simulate(g, plan, topo, pl, opts));
  }

  std::string text;
  if (s.emit == "csv") {
    std::ostringstream os;
    os << csv_header(false) << '\n';
    for (auto& [meta, rep] : runs) os << csv_row(rep, meta, false) << '\n';
    text = os.str();
  } else if (runs.size() == 1) {
    text = report_to_json(runs[0].second, runs[0].first, topo).dump(2) + "\n";
  } else {
    nlohmann::ordered_json j;
    j["runs"] = nlohmann::ordered_json::array();
    for (auto& [meta, rep] : runs)
      j["runs"].push_back(report_to_json(rep, meta, topo));
    text = j.dump(2) + "\n";
  }
  write_output(s.out_path, text);

  if (!s.out_path.empty()) {
    for (auto& [meta, rep] : runs) {
      std::uint64_t total = rep.tiers.total_accesses();
      auto frac = [&](std::uint64_t x) {
        return total ? static_cast<double>(x) / total : 0.0;
      };
      std::cout << meta.pattern << ": count=" << rep.pattern_count
                << " exe_cycles=" << rep.exe_cycles << " tiers near/intra/inter="
                << frac(rep.tiers.near_accesses) << '/'
                << frac(rep.tiers.intra_accesses) << '/'
                << frac(rep.tiers.inter_accesses) << '\n';
    }
  }
  return 0;
}

int cmd_sweep(const CommonArgs& c, const SimArgs& s) {
  CsrGraph g = load_graph(c);
  Semantics sem = parse_semantics(c.semantics);
  PimTopology topo = resolve_topology(s);

  struct Stage {
    const char* name;
    const char* mapping;
    const char* filter;
    const char* duplication;
    const char* stealing;
  };
  const Stage stages[] = {
      {"baseline", "default", "off", "none", "off"},
      {"filter", "default", "on", "none", "off"},
      {"remap", "local-first", "on", "none", "off"},
      {"duplication", "local-first", "on", "auto", "off"},
      {"stealing", "local-first", "on", "auto", "on"},
  };

  std::vector<std::pair<RunMeta, std::future<SimReport>>> futures;
  std::vector<LoopPlan> plans;
  for (const auto& name : pattern_list(c.pattern))
    plans.push_back(compile_plan(builtin_pattern(name), sem));

  for (const Stage& st : stages) {
    SimArgs sa = s;
    sa.mapping = st.mapping;
    sa.filter = st.filter;
    sa.duplication = st.duplication;
    sa.stealing = st.stealing;
    SimOptions opts = parse_sim_options(sa);
    for (std::size_t i = 0; i < plans.size(); ++i) {
      RunMeta meta = make_meta(c, sa, plans[i].pattern.name, st.name);
      const LoopPlan* plan = &plans[i];
      futures.emplace_back(
          meta, std::async(std::launch::async, [&g, &topo, plan, opts]() {
            Placement pl = make_placement(g, topo, opts);
            return simulate(g, *plan, topo, pl, opts);
          }));
    }
  }

  std::vector<std::pair<RunMeta, SimReport>> runs;
  for (auto& [meta, fut] : futures) runs.emplace_back(meta, fut.get());

  std::string text;
  if (s.emit == "json") {
    nlohmann::ordered_json j;
    j["stages"] = nlohmann::ordered_json::array();
    for (auto& [meta, rep] : runs)
      j["stages"].push_back(report_to_json(rep, meta, topo));
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << csv_header(true) << '\n';
    for (auto& [meta, rep] : runs) os << csv_row(rep, meta, true) << '\n';
    text = os.str();
  }
  write_output(s.out_path, text);
  return 0;
}

struct GenArgs {
  std::string kind = "er";
  std::uint64_t n = 0;
  double p = 0.1;
  std::uint64_t hub = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "edgelist";
};

int cmd_gen(const GenArgs& a) {
  CsrGraph g = a.kind == "skewed" ? gen_skewed_graph(a.n, a.hub, a.seed)
                                  : gen_er_graph(a.n, a.p, a.seed);
  std::ofstream out(a.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + a.out_path);
  if (a.format == "csr") {
    write_csr_binary(g, out);
  } else {
    for (VertexId u = 0; u < g.num_vertices; ++u)
      for (VertexId v : g.neighbors(u))
        if (u < v) out << u << ' ' << v << '\n';
  }
  std::cout << "vertices " << g.num_vertices << " edges " << g.num_edges / 2
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PIM-aware graph pattern mining simulator"};
  app.require_subcommand(1);

  CommonArgs count_args;
  auto* count = app.add_subcommand("count", "functional pattern count");
  add_common(count, count_args);

  CommonArgs sim_common;
  SimArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "cycle-level simulation");
  add_common(sim, sim_common);
  add_sim(sim, sim_args);

  CommonArgs sweep_common;
  SimArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "optimization ladder sweep");
  add_common(sweep, sweep_common);
  add_sim(sweep, sweep_args);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "synthetic graph generator");
  gen->add_option("--kind", gen_args.kind, "generator kind")
      ->check(CLI::IsMember({"er", "skewed"}));
  gen->add_option("--n", gen_args.n, "vertex count")->required();
  gen->add_option("--p", gen_args.p, "edge probability (er)");
  gen->add_option("--hub", gen_args.hub, "hub degree (skewed)");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out", gen_args.out_path, "output file")->required();
  gen->add_option("--format", gen_args.format, "output format")
      ->check(CLI::IsMember({"edgelist", "csr"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (count->parsed()) return cmd_count(count_args);
    if (sim->parsed()) return cmd_simulate(sim_common, sim_args);
    if (sweep->parsed()) return cmd_sweep(sweep_common, sweep_args);
    if (gen->parsed()) return cmd_gen(gen_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
