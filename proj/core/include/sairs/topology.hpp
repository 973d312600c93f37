#pragma once

#include <array>
#include <utility>
#include <vector>

#include "sairs/types.hpp"

namespace sairs {

enum class TopologyKind { Star, Ring, Line, CycleTree, Custom };

const char* topology_kind_name(TopologyKind kind);

// Undirected community graph: symmetric 0/1 adjacency with zero diagonal,
// connected (so adjacency + I is irreducible).
struct NetworkTopology {
    int n = 0;
    Matrix adjacency;
    TopologyKind kind = TopologyKind::Custom;

    int degree(int node) const { return static_cast<int>(adjacency.row(node).sum()); }
    std::vector<std::pair<int, int>> edges() const;  // 1-based, i < j
};

// Fixed 9-node instance: a 1-2-3-4-6 path with branches 3-5, 4-7, 5-8, 5-9
// and the closing edge 9-1. Reconstructed from the reference drawing; kept
// because it reproduces the reference spectral radius rho(A+I) = 3.2877 and
// the twin-leaf symmetry of nodes 6 and 7.
inline constexpr std::array<std::pair<int, int>, 9> kCycleTreeEdges = {
    {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {4, 7}, {5, 8}, {5, 9}, {9, 1}}};

// Star: node 1 is the hub. Ring: cycle 1-2-...-n-1. Line: ring minus {1,n}.
// CycleTree: the fixed n=9 instance above.
NetworkTopology make_topology(TopologyKind kind, int n);

// 1-based edge list; throws on out-of-range nodes, self-loops, or a
// disconnected result.
NetworkTopology topology_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

// Spectral radius of the adjacency (or adjacency + I when the flag is set),
// absolute accuracy 1e-8. The flag-off value is obtained from the shifted
// matrix: rho(A) = rho(A + I) - 1 for nonnegative symmetric A, and A + I is
// primitive so the power iteration always converges.
double adjacency_spectral_radius(const NetworkTopology& topo, bool include_self_loops);

// True iff the directed graph of nonzero entries is strongly connected.
bool is_strongly_connected(const Matrix& m);

// Entry (i,i) = intra; (i,j) = inter where {i,j} is an edge, else 0.
Matrix build_beta(const NetworkTopology& topo, double intra, double inter);

}  // namespace sairs
