#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  std::string cmd = std::string(GPIM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe))
    res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("count subcommand") {
  write_file("cli_k4.el", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  auto res = run_cli("count --graph cli_k4.el --pattern 3cc");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "4\n");

  write_file("cli_p3.el", "0 1\n1 2\n");
  auto motif = run_cli("count --graph cli_p3.el --pattern 3mc --semantics induced");
  CHECK(motif.exit_code == 0);
  CHECK(motif.out == "triangle 0\nwedge 1\n");
  std::remove("cli_k4.el");
  std::remove("cli_p3.el");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("count --graph x.el --pattern bogus").exit_code == 2);
  CHECK(run_cli("count").exit_code == 2);
  CHECK(run_cli("simulate --graph x.el --duplication sometimes").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("runtime errors exit with code 1") {
  CHECK(run_cli("count --graph does_not_exist.el --pattern 3cc").exit_code == 1);
}

TEST_CASE("gen then count round trip") {
  auto gen = run_cli("gen --kind er --n 30 --p 0.2 --seed 5 --out cli_er.el");
  CHECK(gen.exit_code == 0);
  auto res = run_cli("count --graph cli_er.el --pattern 3cc");
  CHECK(res.exit_code == 0);
  auto again = run_cli("gen --kind er --n 30 --p 0.2 --seed 5 --out cli_er2.el");
  CHECK(again.exit_code == 0);
  CHECK(slurp("cli_er.el") == slurp("cli_er2.el"));
  std::remove("cli_er.el");
  std::remove("cli_er2.el");
}

TEST_CASE("csr format round trip through the cli") {
  auto gen = run_cli(
      "gen --kind er --n 25 --p 0.3 --seed 8 --out cli_g.csr --format csr");
  CHECK(gen.exit_code == 0);
  auto a = run_cli("count --graph cli_g.csr --format csr --pattern 4cl");
  auto gen_el =
      run_cli("gen --kind er --n 25 --p 0.3 --seed 8 --out cli_g.el");
  CHECK(gen_el.exit_code == 0);
  auto b = run_cli("count --graph cli_g.el --pattern 4cl");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  std::remove("cli_g.csr");
  std::remove("cli_g.el");
}

TEST_CASE("simulate emits byte-identical json across reruns") {
  run_cli("gen --kind er --n 40 --p 0.2 --seed 2 --out cli_sim.el");
  std::string args =
      "simulate --graph cli_sim.el --pattern 4cc --filter on "
      "--mapping local-first --stealing on --out cli_rep.json";
  std::string first;
  for (int i = 0; i < 3; ++i) {
    auto res = run_cli(args);
    CHECK(res.exit_code == 0);
    std::string rep = slurp("cli_rep.json");
    CHECK(!rep.empty());
    if (i == 0)
      first = rep;
    else
      CHECK(rep == first);
  }
  CHECK(first.find("\"pattern_count\"") != std::string::npos);
  CHECK(first.find("\"config\"") != std::string::npos);
  std::remove("cli_sim.el");
  std::remove("cli_rep.json");
}

TEST_CASE("sweep emits the five-stage ladder with stable counts") {
  run_cli("gen --kind skewed --n 48 --hub 15 --seed 4 --out cli_skew.el");
  auto res = run_cli(
      "sweep --graph cli_skew.el --pattern 3cc --emit csv --out cli_sweep.csv");
  CHECK(res.exit_code == 0);
  std::istringstream in(slurp("cli_sweep.csv"));
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line.substr(0, 6) == "stage,");

  std::vector<std::string> stages;
  std::vector<std::string> counts;
  while (std::getline(in, line)) {
    auto first_comma = line.find(',');
    stages.push_back(line.substr(0, first_comma));
    // pattern_count is column 10 (after stage).
    std::istringstream ls(line);
    std::string field;
    for (int i = 0; i < 11 && std::getline(ls, field, ','); ++i) {
    }
    counts.push_back(field);
  }
  CHECK(stages == std::vector<std::string>{"baseline", "filter", "remap",
                                           "duplication", "stealing"});
  for (const auto& c : counts) CHECK(c == counts.front());
  std::remove("cli_skew.el");
  std::remove("cli_sweep.csv");
}

TEST_CASE("sweep json is identical across concurrent reruns") {
  run_cli("gen --kind er --n 36 --p 0.25 --seed 6 --out cli_sw.el");
  std::string args =
      "sweep --graph cli_sw.el --pattern 4cl --emit json --out cli_sw.json";
  std::string first;
  for (int i = 0; i < 3; ++i) {
    auto res = run_cli(args);
    CHECK(res.exit_code == 0);
    std::string rep = slurp("cli_sw.json");
    if (i == 0)
      first = rep;
    else
      CHECK(rep == first);
  }
  std::remove("cli_sw.el");
  std::remove("cli_sw.json");
}

TEST_CASE("topology file feeds the simulation") {
  write_file("cli_topo.cfg",
             "num_channels = 2\nbank_groups_per_channel = 2\n"
             "banks_per_channel = 4\ncapacity_bytes = 1048576\n");
  run_cli("gen --kind er --n 30 --p 0.2 --seed 7 --out cli_tg.el");
  auto res = run_cli(
      "simulate --graph cli_tg.el --pattern 3cc --topo cli_topo.cfg "
      "--out cli_trep.json");
  CHECK(res.exit_code == 0);
  std::string rep = slurp("cli_trep.json");
  CHECK(rep.find("\"num_channels\": 2") != std::string::npos);

  write_file("cli_topo.cfg", "made_up_key = 3\n");
  auto bad = run_cli(
      "simulate --graph cli_tg.el --pattern 3cc --topo cli_topo.cfg");
  CHECK(bad.exit_code == 1);
  std::remove("cli_topo.cfg");
  std::remove("cli_tg.el");
  std::remove("cli_trep.json");
}
