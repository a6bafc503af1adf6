#include "qcon/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace qcon {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edge_list) : n_(n) {
    if (n < 2) throw std::invalid_argument("graph needs at least 2 nodes");
    adj_.assign(n, {});
    for (auto [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop not allowed");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (int v = 0; v < n; ++v) {
        auto& nb = adj_[v];
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw std::invalid_argument("duplicate edge");
    }

    // connectivity via BFS from node 0
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : adj_[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                queue.push_back(u);
            }
        }
    }
    if (reached != n) throw std::invalid_argument("graph is not connected");

    edges_.reserve(edge_list.size());
    for (int u = 0; u < n; ++u)
        for (int v : adj_[u])
            if (u < v) edges_.emplace_back(u, v);
}

bool Graph::has_edge(int u, int v) const {
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<int> shortest_path(const Graph& g, int x, int y) {
    const int n = g.node_count();
    if (x < 0 || x >= n || y < 0 || y >= n)
        throw std::invalid_argument("shortest_path: node out of range");
    if (x == y) return {x};

    std::vector<int> parent(n, -1);
    std::deque<int> queue{x};
    parent[x] = x;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == y) break;
        for (int u : g.neighbors(v)) {  // ascending order fixes the tie-break
            if (parent[u] < 0) {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }

    std::vector<int> path;
    for (int v = y; v != x; v = parent[v]) path.push_back(v);
    path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

int path_degree_sum(const Graph& g, const std::vector<int>& path) {
    if (path.empty()) throw std::invalid_argument("path_degree_sum: empty path");
    int sum = g.degree(path[0]);
    for (std::size_t k = 1; k < path.size(); ++k) {
        if (!g.has_edge(path[k - 1], path[k]))
            throw std::invalid_argument("path_degree_sum: nodes not adjacent in sequence");
        sum += g.degree(path[k]);
    }
    return sum;
}

}  // namespace qcon
