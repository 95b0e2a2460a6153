#include "gpim/csr_graph.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace gpim {

bool CsrGraph::has_edge(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void CsrGraph::validate() const {
  if (row_ptr.size() != num_vertices + 1)
    throw GraphError("row_ptr length mismatch");
  if (row_ptr.front() != 0) throw GraphError("row_ptr[0] != 0");
  if (row_ptr.back() != num_edges)
    throw GraphError("row_ptr[n] != num_edges");
  if (col_idx.size() != num_edges) throw GraphError("col_idx length mismatch");
  std::uint64_t maxd = 0;
  for (std::uint64_t v = 0; v < num_vertices; ++v) {
    if (row_ptr[v + 1] < row_ptr[v])
      throw GraphError("row_ptr not monotone at vertex " + std::to_string(v));
    auto nb = neighbors(static_cast<VertexId>(v));
    maxd = std::max<std::uint64_t>(maxd, nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= num_vertices)
        throw GraphError("neighbor id out of range at vertex " +
                         std::to_string(v));
      if (nb[i] == v) throw GraphError("self loop at vertex " + std::to_string(v));
      if (i > 0 && nb[i] <= nb[i - 1])
        throw GraphError("neighbor list not strictly ascending at vertex " +
                         std::to_string(v));
    }
  }
  if (maxd != max_degree) throw GraphError("max_degree field inconsistent");
  for (std::uint64_t v = 0; v < num_vertices; ++v)
    for (VertexId u : neighbors(static_cast<VertexId>(v)))
      if (!has_edge(u, static_cast<VertexId>(v)))
        throw GraphError("asymmetric adjacency between " + std::to_string(v) +
                         " and " + std::to_string(u));
}

CsrGraph graph_from_edges(std::uint64_t num_vertices,
                          std::vector<std::pair<VertexId, VertexId>> edges) {
  std::vector<std::pair<VertexId, VertexId>> dir;
  dir.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u == v) continue;  // self loops dropped at ingest
    if (u >= num_vertices || v >= num_vertices)
      throw GraphError("edge endpoint out of range");
    dir.emplace_back(u, v);
    dir.emplace_back(v, u);
  }
  std::sort(dir.begin(), dir.end());
  dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

  CsrGraph g;
  g.num_vertices = num_vertices;
  g.num_edges = dir.size();
  g.row_ptr.assign(num_vertices + 1, 0);
  g.col_idx.reserve(dir.size());
  for (auto [u, v] : dir) {
    g.row_ptr[u + 1]++;
    g.col_idx.push_back(v);
  }
  for (std::uint64_t v = 0; v < num_vertices; ++v)
    g.row_ptr[v + 1] += g.row_ptr[v];
  for (std::uint64_t v = 0; v < num_vertices; ++v)
    g.max_degree = std::max(g.max_degree, g.degree(static_cast<VertexId>(v)));
  return g;
}

CsrGraph load_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t u, v;
    if (!(ls >> u >> v))
      throw GraphError("malformed edge at line " + std::to_string(lineno));
    std::string rest;
    if (ls >> rest)
      throw GraphError("trailing tokens at line " + std::to_string(lineno));
    raw.emplace_back(u, v);
  }
  if (raw.empty()) throw GraphError("empty edge list");

  // Compact ids to [0, n) by ascending original id.
  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto compact = [&](std::uint64_t id) {
    return static_cast<VertexId>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(compact(u), compact(v));
  return graph_from_edges(ids.size(), std::move(edges));
}

namespace {

template <typename T>
T read_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!in) throw GraphError("truncated CSR stream");
  T x = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    x |= static_cast<T>(buf[i]) << (8 * i);
  return x;
}

template <typename T>
void write_le(std::ostream& out, T x) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<unsigned char>((x >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

}  // namespace

CsrGraph load_csr_binary(std::istream& in) {
  CsrGraph g;
  g.num_vertices = read_le<std::uint64_t>(in);
  g.row_ptr.resize(g.num_vertices + 1);
  for (auto& p : g.row_ptr) p = read_le<std::uint64_t>(in);
  g.num_edges = g.row_ptr.back();
  g.col_idx.resize(g.num_edges);
  for (auto& c : g.col_idx) c = read_le<std::uint32_t>(in);
  for (std::uint64_t v = 0; v < g.num_vertices; ++v)
    g.max_degree = std::max(g.max_degree, g.degree(static_cast<VertexId>(v)));
  g.validate();
  return g;
}

void write_csr_binary(const CsrGraph& g, std::ostream& out) {
  write_le<std::uint64_t>(out, g.num_vertices);
  for (auto p : g.row_ptr) write_le<std::uint64_t>(out, p);
  for (auto c : g.col_idx) write_le<std::uint32_t>(out, c);
}

std::pair<CsrGraph, DegreeRelabeling> normalize_degree_order(
    const CsrGraph& g) {
  const auto n = g.num_vertices;
  DegreeRelabeling rel;
  rel.new_to_old.resize(n);
  std::iota(rel.new_to_old.begin(), rel.new_to_old.end(), 0);
  std::stable_sort(rel.new_to_old.begin(), rel.new_to_old.end(),
                   [&](VertexId a, VertexId b) {
                     return g.degree(a) > g.degree(b);
                   });
  rel.old_to_new.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) rel.old_to_new[rel.new_to_old[i]] = i;

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(g.num_edges / 2);
  for (std::uint64_t v = 0; v < n; ++v)
    for (VertexId u : g.neighbors(static_cast<VertexId>(v)))
      if (u > v)
        edges.emplace_back(rel.old_to_new[v], rel.old_to_new[u]);
  return {graph_from_edges(n, std::move(edges)), std::move(rel)};
}

}  // namespace gpim
