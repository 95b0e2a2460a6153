#include <doctest.h>

#include <sstream>

#include "gpim/csr_graph.hpp"
#include "gpim/graph_gen.hpp"

using namespace gpim;

namespace {

CsrGraph k4() {
  return graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("csr build from edges") {
  CsrGraph g = k4();
  g.validate();
  CHECK(g.num_vertices == 4);
  CHECK(g.num_edges == 12);
  CHECK(g.max_degree == 3);
  CHECK(g.degree(0) == 3);
  CHECK(g.has_edge(1, 3));
  CHECK_FALSE(g.has_edge(0, 0));
  CHECK(g.neighbor_bytes(0) == 12);
}

TEST_CASE("csr build drops duplicates and self loops") {
  CsrGraph g = graph_from_edges(3, {{0, 1}, {1, 0}, {1, 1}, {1, 2}, {1, 2}});
  g.validate();
  CHECK(g.num_edges == 4);
  CHECK(g.degree(1) == 2);
}

TEST_CASE("csr build rejects out of range endpoints") {
  CHECK_THROWS_AS(graph_from_edges(2, {{0, 2}}), GraphError);
}

TEST_CASE("edge list parsing") {
  std::istringstream in("# comment\n10 20\n20 30\n\n10 30\n");
  CsrGraph g = load_edge_list(in);
  g.validate();
  CHECK(g.num_vertices == 3);  // ids compacted
  CHECK(g.num_edges == 6);
  CHECK(g.has_edge(0, 2));
}

TEST_CASE("edge list parse errors carry line numbers") {
  std::istringstream bad("1 2\n3\n");
  CHECK_THROWS_WITH_AS(load_edge_list(bad), "malformed edge at line 2",
                       GraphError);
  std::istringstream trailing("1 2 3\n");
  CHECK_THROWS_WITH_AS(load_edge_list(trailing), "trailing tokens at line 1",
                       GraphError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(load_edge_list(empty), GraphError);
}

TEST_CASE("csr binary round trip") {
  CsrGraph g = gen_er_graph(30, 0.2, 9);
  std::stringstream buf;
  write_csr_binary(g, buf);
  CsrGraph back = load_csr_binary(buf);
  CHECK(back.num_vertices == g.num_vertices);
  CHECK(back.row_ptr == g.row_ptr);
  CHECK(back.col_idx == g.col_idx);
}

TEST_CASE("csr binary rejects truncation") {
  CsrGraph g = k4();
  std::stringstream buf;
  write_csr_binary(g, buf);
  std::string bytes = buf.str();
  std::istringstream cut(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(load_csr_binary(cut), GraphError);
}

TEST_CASE("degree normalization sorts by degree with stable ties") {
  // Path 0-1-2-3: degrees 1,2,2,1. Ties keep ascending original order.
  CsrGraph g = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto [sorted, rel] = normalize_degree_order(g);
  sorted.validate();
  CHECK(rel.new_to_old == std::vector<VertexId>{1, 2, 0, 3});
  CHECK(sorted.degree(0) == 2);
  CHECK(sorted.degree(1) == 2);
  CHECK(sorted.degree(2) == 1);
  for (VertexId v = 0; v + 1 < sorted.num_vertices; ++v)
    CHECK(sorted.degree(v) >= sorted.degree(v + 1));
  CHECK(sorted.num_edges == g.num_edges);
}

TEST_CASE("er generator is deterministic and degree sorted") {
  CsrGraph a = gen_er_graph(50, 0.15, 7);
  CsrGraph b = gen_er_graph(50, 0.15, 7);
  CHECK(a.col_idx == b.col_idx);
  CHECK(a.row_ptr == b.row_ptr);
  a.validate();
  for (VertexId v = 0; v + 1 < a.num_vertices; ++v)
    CHECK(a.degree(v) >= a.degree(v + 1));
  CsrGraph c = gen_er_graph(50, 0.15, 8);
  CHECK(a.col_idx != c.col_idx);
}

TEST_CASE("er generator edge probability extremes") {
  CsrGraph empty = gen_er_graph(10, 0.0, 1);
  CHECK(empty.num_edges == 0);
  CsrGraph full = gen_er_graph(10, 1.0, 1);
  CHECK(full.num_edges == 90);
  CHECK_THROWS_AS(gen_er_graph(0, 0.5, 1), GraphError);
  CHECK_THROWS_AS(gen_er_graph(10, 1.5, 1), GraphError);
  CHECK_THROWS_AS(gen_er_graph(10, -0.1, 1), GraphError);
}

TEST_CASE("skewed generator concentrates degree at low ids") {
  CsrGraph g = gen_skewed_graph(64, 31, 3);
  g.validate();
  CHECK(g.num_vertices == 64);
  // Hub clique survives normalization at the front.
  CHECK(g.degree(0) >= 31);
  CHECK(g.degree(0) > 4 * g.degree(40));
  CsrGraph h = gen_skewed_graph(64, 31, 3);
  CHECK(g.col_idx == h.col_idx);
  CHECK_THROWS_AS(gen_skewed_graph(10, 10, 1), GraphError);
}
