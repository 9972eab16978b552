#pragma once

#include <cstddef>

#include "lipext/graph.hpp"

namespace lipext {

/// Largest vertex count accepted by has_minor.
inline constexpr std::size_t kMaxMinorVertices = 12;

/// True iff K_m is a minor of `graph`. Some connected component must split
/// into m connected, pairwise adjacent vertex sets: in a connected graph any
/// minor model extends to a partition of all vertices by absorbing unused
/// vertices into an adjacent branch set, so partitions into exactly m blocks
/// are searched exhaustively. Edge weights are ignored.
/// Throws Error(SizeLimit) above kMaxMinorVertices vertices.
bool has_minor(const WeightedGraph& graph, std::size_t m);

}  // namespace lipext
