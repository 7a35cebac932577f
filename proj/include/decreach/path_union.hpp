#pragma once

#include <vector>

#include "decreach/graph.hpp"

namespace decreach {

/// Nodes on some x->y path of at most h edges, i.e. all v with
/// dist(x,v) + dist(v,y) <= h. Two bounded BFS runs; O(m). Sorted ascending.
std::vector<NodeId> path_union(const Digraph& g, NodeId x, NodeId y, int h);

inline constexpr std::size_t kBruteForceMaxNodes = 30;
inline constexpr int kBruteForceMaxDepth = 10;

/// Enumerates x->y walks of length <= h and unions their nodes.
/// Exponential; throws std::invalid_argument above the size guard.
std::vector<NodeId> brute_force_path_union(const Digraph& g, NodeId x, NodeId y, int h);

}  // namespace decreach
