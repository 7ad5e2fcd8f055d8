#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace treefrac {

struct Edge;

/// Largest vertex count the exact subdivision search accepts.
constexpr int planarity_exact_max_n() { return 8; }

/// Exact planarity for n <= 8 by exhaustive search for K5/K3,3 subdivisions.
/// adj[v] is the neighbor bitmask of vertex v (simple graph view; parallel
/// edges are irrelevant to planarity).
bool is_planar_adj(int n, const std::uint16_t* adj);

bool is_planar_small(int n, std::span<const Edge> edges);

}  // namespace treefrac
