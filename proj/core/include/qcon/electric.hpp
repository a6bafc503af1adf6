#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qcon/graph.hpp"

namespace qcon {

/// Weighted-graph view of the biased walk: conductance w_uv on each edge plus
/// a self-loop weight w_vv that tops every node's total weight up to exactly 1
/// (so the total network weight is n). Self-loops carry no current; they exist
/// only for the weight accounting.
struct ConductanceNetwork {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // same order as Graph::edges()
    std::vector<double> edge_weight;         // w_uv = (1/n)(1/deg u + 1/deg v)
    std::vector<double> self_weight;         // w_vv = 1 - sum of incident w_uv
    double total_weight = 0.0;
};

ConductanceNetwork biased_conductances(const Graph& g);

/// Two-terminal effective resistance: unit current injected at x, extracted at
/// y, Laplacian solved with y grounded (row/column deleted). `resistance` is
/// indexed like `edges` and must be positive. Returns 0 when x == y.
double effective_resistance(int n, std::span<const std::pair<int, int>> edges,
                            std::span<const double> resistance, int x, int y);
double effective_resistance(const Graph& g, std::span<const double> resistance,
                            int x, int y);
double effective_resistance(const ConductanceNetwork& net, int x, int y);

/// w * r'_xy with w = n for biased conductances; equals H(x,y) + H(y,x).
double commute_time_via_resistance(const Graph& g, int x, int y);

struct ResistanceBoundReport {
    int n = 0;
    double max_r_eff = 0.0;
    double bound_r = 0.0;        // 3 n^2, strict
    double max_commute = 0.0;
    double bound_commute = 0.0;  // 3 n^3, strict
    std::pair<int, int> witness_pair{0, 0};
};

/// Scans all pairs under the biased conductances. The bounds are theorems, so
/// a violation throws: it signals an implementation defect, not bad input.
ResistanceBoundReport resistance_bound_report(const Graph& g);

}  // namespace qcon
