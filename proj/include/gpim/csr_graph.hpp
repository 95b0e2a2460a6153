#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gpim {

using VertexId = std::uint32_t;

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

/// Immutable once built. Neighbor lists are strictly ascending, symmetric and
/// self-loop free. num_edges counts directed slots (2x undirected edges).
struct CsrGraph {
  std::uint64_t num_vertices = 0;
  std::uint64_t num_edges = 0;
  std::vector<std::uint64_t> row_ptr;  // length num_vertices + 1
  std::vector<VertexId> col_idx;       // length num_edges
  std::uint64_t max_degree = 0;

  std::uint64_t degree(VertexId v) const { return row_ptr[v + 1] - row_ptr[v]; }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {col_idx.data() + row_ptr[v], static_cast<std::size_t>(degree(v))};
  }
  bool has_edge(VertexId u, VertexId v) const;
  std::uint64_t neighbor_bytes(VertexId v) const { return 4 * degree(v); }

  /// Throws GraphError on any structural invariant violation.
  void validate() const;
};

struct DegreeRelabeling {
  std::vector<VertexId> old_to_new;
  std::vector<VertexId> new_to_old;
};

/// Build from an undirected edge set. Duplicate edges and self loops are
/// dropped; vertex ids are used as-is and must be < num_vertices.
CsrGraph graph_from_edges(std::uint64_t num_vertices,
                          std::vector<std::pair<VertexId, VertexId>> edges);

/// Whitespace-separated "u v" pairs, '#' comment lines ignored. Ids are
/// compacted to [0, n) in ascending order of the original ids.
CsrGraph load_edge_list(std::istream& in);

/// Little-endian: u64 num_vertices, (n+1) u64 row_ptr, num_edges u32 col_idx.
CsrGraph load_csr_binary(std::istream& in);
void write_csr_binary(const CsrGraph& g, std::ostream& out);

/// Relabel so degree(v) >= degree(v+1); ties keep ascending original id.
std::pair<CsrGraph, DegreeRelabeling> normalize_degree_order(const CsrGraph& g);

}  // namespace gpim
