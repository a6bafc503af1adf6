#include "qcon/topology.hpp"

#include <sstream>
#include <stdexcept>

#include "qcon/rng.hpp"

namespace qcon {

TopologySpec TopologySpec::complete(int n) { return {TopologyKind::Complete, n}; }
TopologySpec TopologySpec::path(int n) { return {TopologyKind::Path, n}; }
TopologySpec TopologySpec::cycle(int n) { return {TopologyKind::Cycle, n}; }
TopologySpec TopologySpec::star(int n) { return {TopologyKind::Star, n}; }

TopologySpec TopologySpec::grid(int rows, int cols) {
    TopologySpec s;
    s.kind = TopologyKind::Grid;
    s.rows = rows;
    s.cols = cols;
    s.n = rows * cols;
    return s;
}

TopologySpec TopologySpec::erdos_renyi(int n, double p, std::uint64_t seed) {
    TopologySpec s;
    s.kind = TopologyKind::ErdosRenyi;
    s.n = n;
    s.edge_prob = p;
    s.seed = seed;
    return s;
}

std::string topology_name(const TopologySpec& spec) {
    switch (spec.kind) {
        case TopologyKind::Complete: return "complete";
        case TopologyKind::Path: return "path";
        case TopologyKind::Cycle: return "cycle";
        case TopologyKind::Star: return "star";
        case TopologyKind::Grid: {
            std::ostringstream os;
            os << "grid_" << spec.rows << "x" << spec.cols;
            return os.str();
        }
        case TopologyKind::ErdosRenyi: {
            std::ostringstream os;
            os << "erdos_renyi_p" << spec.edge_prob;
            return os.str();
        }
    }
    return "unknown";
}

namespace {

Graph make_erdos_renyi(int n, double p, std::uint64_t seed) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("erdos_renyi: p must be in (0, 1]");
    Rng rng = Rng::derive({seed, static_cast<std::uint64_t>(n)});
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.uniform01() < p) edges.emplace_back(u, v);
        try {
            return Graph(n, edges);
        } catch (const std::invalid_argument&) {
            // disconnected sample; try again
        }
    }
    throw std::runtime_error(
        "erdos_renyi: no connected graph within 1000 attempts (p too small?)");
}

}  // namespace

Graph build_topology(const TopologySpec& spec) {
    const int n = spec.n;
    std::vector<std::pair<int, int>> edges;
    switch (spec.kind) {
        case TopologyKind::Complete:
            if (n < 2) throw std::invalid_argument("complete: n must be >= 2");
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
            return Graph(n, edges);
        case TopologyKind::Path:
            if (n < 2) throw std::invalid_argument("path: n must be >= 2");
            for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
            return Graph(n, edges);
        case TopologyKind::Cycle:
            if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
            for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
            edges.emplace_back(0, n - 1);
            return Graph(n, edges);
        case TopologyKind::Star:
            if (n < 2) throw std::invalid_argument("star: n must be >= 2");
            for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
            return Graph(n, edges);
        case TopologyKind::Grid: {
            const int rows = spec.rows, cols = spec.cols;
            if (rows < 1 || cols < 1 || rows * cols < 2)
                throw std::invalid_argument("grid: needs rows*cols >= 2");
            auto id = [cols](int r, int c) { return r * cols + c; };
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) {
                    if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
                    if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
                }
            return Graph(rows * cols, edges);
        }
        case TopologyKind::ErdosRenyi:
            if (n < 2) throw std::invalid_argument("erdos_renyi: n must be >= 2");
            return make_erdos_renyi(n, spec.edge_prob, spec.seed);
    }
    throw std::invalid_argument("unknown topology kind");
}

Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    auto fail = [&](const std::string& what) -> void {
        throw std::runtime_error("edge list, line " + std::to_string(line_no) + ": " + what);
    };

    if (!next_line()) throw std::runtime_error("edge list: empty input");
    std::istringstream header(line);
    int n = 0, m = 0;
    std::string junk;
    if (!(header >> n >> m) || (header >> junk)) fail("expected header \"N M\"");
    if (n < 2) fail("node count must be >= 2");
    if (m < 0) fail("negative edge count");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int e = 0; e < m; ++e) {
        if (!next_line()) throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                                   " edges, got " + std::to_string(e));
        std::istringstream row(line);
        int u = 0, v = 0;
        if (!(row >> u >> v) || (row >> junk)) fail("expected \"u v\"");
        if (u == v) fail("self-loop");
        if (u < 0 || v >= n || u > v) fail("expected 0 <= u < v < N");
        for (auto [pu, pv] : edges)
            if (pu == u && pv == v) fail("duplicate edge");
        edges.emplace_back(u, v);
    }
    if (next_line()) fail("trailing content after last edge");

    try {
        return Graph(n, edges);
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error(std::string("edge list: ") + err.what());
    }
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.node_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
    return os.str();
}

}  // namespace qcon
