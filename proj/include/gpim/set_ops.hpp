#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gpim/csr_graph.hpp"

namespace gpim {

/// Merge intersection of two strictly ascending lists; keeps x < bound when a
/// bound is given. O(|a| + |b|).
inline std::vector<VertexId> bounded_intersect(std::span<const VertexId> a,
                                               std::span<const VertexId> b,
                                               std::optional<VertexId> bound) {
  std::vector<VertexId> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (bound && a[i] >= *bound) break;
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

/// Merge subtraction: {x in a : x not in b, x < bound}.
inline std::vector<VertexId> bounded_subtract(std::span<const VertexId> a,
                                              std::span<const VertexId> b,
                                              std::optional<VertexId> bound) {
  std::vector<VertexId> out;
  std::size_t i = 0, j = 0;
  while (i < a.size()) {
    if (bound && a[i] >= *bound) break;
    if (j < b.size() && b[j] < a[i]) {
      ++j;
    } else if (j < b.size() && b[j] == a[i]) {
      ++i;
      ++j;
    } else {
      out.push_back(a[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace gpim
