#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qcon {

/// Undirected simple connected graph over nodes 0..n-1. Adjacency lists are
/// kept sorted; the constructor validates symmetry, simplicity and
/// connectivity and throws std::invalid_argument on violation.
class Graph {
public:
    Graph(int n, const std::vector<std::pair<int, int>>& edge_list);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    bool has_edge(int u, int v) const;

    /// Canonical edge enumeration: (u, v) with u < v, lexicographically sorted.
    /// Per-edge quantities elsewhere (resistances, conductances) index into it.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

/// Minimum-length path from x to y, both inclusive. Ties are broken by
/// expanding neighbors in ascending index order, so the result is
/// reproducible. x == y yields the single-node path {x}.
std::vector<int> shortest_path(const Graph& g, int x, int y);

/// Sum of degrees over the nodes of `path`; consecutive path nodes must be
/// adjacent. For any shortest path this sum is < 3n.
int path_degree_sum(const Graph& g, const std::vector<int>& path);

}  // namespace qcon
