#pragma once

#include <cstdint>

#include "gpim/csr_graph.hpp"

namespace gpim {

/// Erdos-Renyi G(n, p), deterministic in (n, p, seed) and returned
/// degree-normalized.
CsrGraph gen_er_graph(std::uint64_t n, double p, std::uint64_t seed);

/// One dense hub community (clique on hub_degree + 1 vertices) plus a sparse
/// random tail, degree-normalized. Concentrates triangle work on the lowest
/// vertex ids so a handful of roots dominate the per-root work vector.
CsrGraph gen_skewed_graph(std::uint64_t n, std::uint64_t hub_degree,
                          std::uint64_t seed);

}  // namespace gpim
