#include "qcon/electric.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace qcon {

ConductanceNetwork biased_conductances(const Graph& g) {
    const int n = g.node_count();
    ConductanceNetwork net;
    net.n = n;
    net.edges = g.edges();
    net.edge_weight.reserve(net.edges.size());

    std::vector<double> node_weight(n, 0.0);
    for (auto [u, v] : net.edges) {
        const double w = (1.0 / n) * (1.0 / g.degree(u) + 1.0 / g.degree(v));
        net.edge_weight.push_back(w);
        node_weight[u] += w;
        node_weight[v] += w;
    }
    net.self_weight.resize(n);
    net.total_weight = 0.0;
    for (int v = 0; v < n; ++v) {
        double self = 1.0 - node_weight[v];
        if (self < -1e-12)
            throw std::logic_error("biased_conductances: negative self weight");
        net.self_weight[v] = self < 0.0 ? 0.0 : self;
        net.total_weight += node_weight[v] + net.self_weight[v];
    }
    return net;
}

double effective_resistance(int n, std::span<const std::pair<int, int>> edges,
                            std::span<const double> resistance, int x, int y) {
    if (x < 0 || x >= n || y < 0 || y >= n)
        throw std::invalid_argument("effective_resistance: node out of range");
    if (x == y) return 0.0;
    if (edges.size() != resistance.size())
        throw std::invalid_argument("effective_resistance: edge/resistance size mismatch");

    // Laplacian of conductances 1/r_e with row/column y deleted.
    auto reduced = [y](int v) { return v < y ? v : v - 1; };
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n - 1, n - 1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [u, v] = edges[e];
        if (!(resistance[e] > 0.0))
            throw std::invalid_argument("effective_resistance: resistance must be > 0");
        const double c = 1.0 / resistance[e];
        if (u != y) lap(reduced(u), reduced(u)) += c;
        if (v != y) lap(reduced(v), reduced(v)) += c;
        if (u != y && v != y) {
            lap(reduced(u), reduced(v)) -= c;
            lap(reduced(v), reduced(u)) -= c;
        }
    }

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
    rhs(reduced(x)) = 1.0;  // unit current in at x, out at grounded y
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(lap);
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (pivots.minCoeff() <= 1e-12 * std::max(1.0, pivots.maxCoeff()))
        throw std::runtime_error("effective_resistance: singular Laplacian system");
    const Eigen::VectorXd potential = lu.solve(rhs);
    const double residual = (lap * potential - rhs).cwiseAbs().maxCoeff();
    if (!potential.allFinite() || residual > 1e-9)
        throw std::runtime_error("effective_resistance: singular Laplacian system");
    return potential(reduced(x));
}

double effective_resistance(const Graph& g, std::span<const double> resistance,
                            int x, int y) {
    return effective_resistance(g.node_count(), g.edges(), resistance, x, y);
}

double effective_resistance(const ConductanceNetwork& net, int x, int y) {
    std::vector<double> resistance(net.edge_weight.size());
    for (std::size_t e = 0; e < resistance.size(); ++e)
        resistance[e] = 1.0 / net.edge_weight[e];
    return effective_resistance(net.n, net.edges, resistance, x, y);
}

double commute_time_via_resistance(const Graph& g, int x, int y) {
    const ConductanceNetwork net = biased_conductances(g);
    return net.total_weight * effective_resistance(net, x, y);
}

ResistanceBoundReport resistance_bound_report(const Graph& g) {
    const int n = g.node_count();
    const ConductanceNetwork net = biased_conductances(g);

    ResistanceBoundReport report;
    report.n = n;
    report.bound_r = 3.0 * n * n;
    report.bound_commute = 3.0 * n * n * n;
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            const double r = effective_resistance(net, x, y);
            if (r > report.max_r_eff) {
                report.max_r_eff = r;
                report.witness_pair = {x, y};
            }
        }
    }
    report.max_commute = net.total_weight * report.max_r_eff;
    if (report.max_r_eff >= report.bound_r || report.max_commute >= report.bound_commute)
        throw std::logic_error("resistance_bound_report: proven bound violated (defect)");
    return report;
}

}  // namespace qcon
