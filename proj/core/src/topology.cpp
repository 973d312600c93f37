#include "sairs/topology.hpp"

#include <string>

#include "sairs/numerics.hpp"

namespace sairs {

const char* topology_kind_name(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::Star: return "star";
        case TopologyKind::Ring: return "ring";
        case TopologyKind::Line: return "line";
        case TopologyKind::CycleTree: return "cycle_tree";
        case TopologyKind::Custom: return "custom";
    }
    return "custom";
}

std::vector<std::pair<int, int>> NetworkTopology::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (adjacency(i, j) != 0.0) out.emplace_back(i + 1, j + 1);
        }
    }
    return out;
}

namespace {

NetworkTopology from_adjacency(int n, Matrix adjacency, TopologyKind kind) {
    NetworkTopology topo{n, std::move(adjacency), kind};
    if (!is_strongly_connected(topo.adjacency + Matrix::Identity(n, n))) {
        throw SairsError(Errc::ReducibleMatrix,
                         std::string(topology_kind_name(kind)) + " topology is not connected");
    }
    return topo;
}

}  // namespace

NetworkTopology make_topology(TopologyKind kind, int n) {
    Matrix adj;
    switch (kind) {
        case TopologyKind::Star:
            if (n < 2) throw SairsError(Errc::InvalidArgument, "star requires n >= 2");
            adj = Matrix::Zero(n, n);
            for (int k = 1; k < n; ++k) adj(0, k) = adj(k, 0) = 1.0;
            break;
        case TopologyKind::Ring:
            if (n < 3) throw SairsError(Errc::InvalidArgument, "ring requires n >= 3");
            adj = Matrix::Zero(n, n);
            for (int k = 0; k < n; ++k) {
                const int next = (k + 1) % n;
                adj(k, next) = adj(next, k) = 1.0;
            }
            break;
        case TopologyKind::Line:
            if (n < 3) throw SairsError(Errc::InvalidArgument, "line requires n >= 3");
            adj = Matrix::Zero(n, n);
            for (int k = 0; k + 1 < n; ++k) adj(k, k + 1) = adj(k + 1, k) = 1.0;
            break;
        case TopologyKind::CycleTree: {
            if (n != 9) throw SairsError(Errc::InvalidArgument, "cycle_tree is defined for n = 9 only");
            adj = Matrix::Zero(9, 9);
            for (const auto& [a, b] : kCycleTreeEdges) {
                adj(a - 1, b - 1) = adj(b - 1, a - 1) = 1.0;
            }
            break;
        }
        case TopologyKind::Custom:
            throw SairsError(Errc::InvalidArgument, "custom topologies require an explicit edge list");
    }
    return from_adjacency(n, std::move(adj), kind);
}

NetworkTopology topology_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw SairsError(Errc::InvalidArgument, "node count must be >= 1");
    Matrix adj = Matrix::Zero(n, n);
    for (const auto& [a, b] : edges) {
        if (a < 1 || a > n || b < 1 || b > n) {
            throw SairsError(Errc::InvalidArgument,
                             "edge {" + std::to_string(a) + "," + std::to_string(b) + "} out of range");
        }
        if (a == b) {
            throw SairsError(Errc::InvalidArgument, "self-loop on node " + std::to_string(a));
        }
        adj(a - 1, b - 1) = adj(b - 1, a - 1) = 1.0;
    }
    return from_adjacency(n, std::move(adj), TopologyKind::Custom);
}

double adjacency_spectral_radius(const NetworkTopology& topo, bool include_self_loops) {
    const Matrix shifted = topo.adjacency + Matrix::Identity(topo.n, topo.n);
    const PerronData perron = power_iteration(shifted);
    return include_self_loops ? perron.rho : perron.rho - 1.0;
}

bool is_strongly_connected(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw SairsError(Errc::DimensionMismatch, "connectivity check requires a square matrix");
    }
    const int n = static_cast<int>(m.rows());
    if (n == 0) return false;
    if (n == 1) return true;

    // depth-first reachability along arcs and along reversed arcs
    const auto reaches_all = [&](bool reversed) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                const double w = reversed ? m(v, u) : m(u, v);
                if (u != v && w != 0.0 && !seen[v]) {
                    seen[v] = 1;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        return count == n;
    };
    return reaches_all(false) && reaches_all(true);
}

Matrix build_beta(const NetworkTopology& topo, double intra, double inter) {
    if (!(intra > 0.0)) throw SairsError(Errc::InvalidArgument, "intra rate must be > 0");
    if (!(inter >= 0.0)) throw SairsError(Errc::InvalidArgument, "inter rate must be >= 0");
    return intra * Matrix::Identity(topo.n, topo.n) + inter * topo.adjacency;
}

}  // namespace sairs
