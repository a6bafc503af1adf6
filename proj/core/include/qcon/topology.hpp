#pragma once

#include <cstdint>
#include <string>

#include "qcon/graph.hpp"

namespace qcon {

enum class TopologyKind { Complete, Path, Cycle, Star, Grid, ErdosRenyi };

struct TopologySpec {
    TopologyKind kind = TopologyKind::Complete;
    int n = 0;                 // node count (Grid derives it from rows * cols)
    int rows = 0;              // Grid only
    int cols = 0;              // Grid only
    double edge_prob = 0.0;    // ErdosRenyi only
    std::uint64_t seed = 0;    // ErdosRenyi only

    static TopologySpec complete(int n);
    static TopologySpec path(int n);
    static TopologySpec cycle(int n);
    static TopologySpec star(int n);
    static TopologySpec grid(int rows, int cols);
    static TopologySpec erdos_renyi(int n, double p, std::uint64_t seed);
};

std::string topology_name(const TopologySpec& spec);

/// Deterministic for a given spec, seed included. Erdos-Renyi rejection-samples
/// until connected (at most 1000 attempts; failure signals p too small).
Graph build_topology(const TopologySpec& spec);

/// Edge-list text format: first line "N M", then M lines "u v" with
/// 0 <= u < v < N, whitespace-separated.
Graph load_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

}  // namespace qcon
