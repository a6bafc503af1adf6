// Acceptance suite: runs every product-level criterion at its stated
// tolerance and prints one pass/fail line each. Exit code 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcon/chain.hpp"
#include "qcon/consensus.hpp"
#include "qcon/electric.hpp"
#include "qcon/experiments.hpp"
#include "qcon/graph.hpp"
#include "qcon/rng.hpp"
#include "qcon/topology.hpp"
#include "qcon/walks.hpp"

using namespace qcon;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

Graph random_connected(int n, std::uint64_t seed) {
    const double p = std::min(1.0, 2.0 * std::log(n + 1.0) / n);
    return build_topology(TopologySpec::erdos_renyi(n, p, seed));
}

std::vector<std::pair<std::string, Graph>> named_catalog(int n_lo, int n_hi) {
    std::vector<std::pair<std::string, Graph>> out;
    for (int n = n_lo; n <= n_hi; ++n) {
        out.emplace_back("complete_" + std::to_string(n),
                         build_topology(TopologySpec::complete(n)));
        out.emplace_back("path_" + std::to_string(n),
                         build_topology(TopologySpec::path(n)));
        if (n >= 3)
            out.emplace_back("cycle_" + std::to_string(n),
                             build_topology(TopologySpec::cycle(n)));
        out.emplace_back("star_" + std::to_string(n),
                         build_topology(TopologySpec::star(n)));
    }
    for (int rows = 2; rows * rows <= n_hi; ++rows)
        for (int cols = rows; rows * cols <= n_hi; ++cols)
            if (rows * cols >= n_lo) {
                const auto spec = TopologySpec::grid(rows, cols);
                out.emplace_back(topology_name(spec), build_topology(spec));
            }
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --- criterion bodies -------------------------------------------------------

void criterion_1_fig1_fixture() {
    const Graph tri = build_topology(TopologySpec::complete(3));
    const std::vector<double> resistance{2.0, 1.0, 1.0};  // edges (0,1),(0,2),(1,2)
    const double r_ij = effective_resistance(tri, resistance, 0, 1);
    const double r_ik = effective_resistance(tri, resistance, 0, 2);
    require(std::abs(r_ij - 1.0) <= 1e-9, "r'_ij = " + fmt(r_ij) + ", want 1");
    require(std::abs(r_ik - 0.75) <= 1e-9, "r'_ik = " + fmt(r_ik) + ", want 0.75");
}

void criterion_2_commute_identity() {
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 4 + rep % 9;  // 4..12
        const Graph g = random_connected(n, 7000 + rep);
        const TransitionKernel biased = build_kernel(g, WalkKind::Biased);
        const Eigen::MatrixXd h = hitting_time_matrix(biased);
        const ConductanceNetwork net = biased_conductances(g);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y) continue;
                const double commute = n * effective_resistance(net, x, y);
                const double err = std::abs(h(x, y) + h(y, x) - commute);
                require(err <= 1e-6 * commute,
                        "graph " + std::to_string(rep) + " pair (" + std::to_string(x) +
                            "," + std::to_string(y) + "): |H+H - n r'| = " + fmt(err));
            }
    }
}

void criterion_3_hitting_and_resistance_bounds() {
    std::vector<std::pair<std::string, Graph>> graphs = named_catalog(4, 50);
    for (int rep = 0; rep < 100; ++rep)
        graphs.emplace_back("random_" + std::to_string(rep),
                            random_connected(4 + rep % 47, 5000 + rep));

    for (const auto& [name, g] : graphs) {
        const double n = g.node_count();
        const MaxHitting hit = max_hitting_time(build_kernel(g, WalkKind::Biased));
        require(hit.value < 3.0 * n * n * n,
                name + ": max hitting " + fmt(hit.value) + " !< 3n^3");
        const ResistanceBoundReport res = resistance_bound_report(g);
        require(res.max_r_eff < res.bound_r,
                name + ": max r' " + fmt(res.max_r_eff) + " !< 3n^2");
    }
}

void criterion_4_complete_graph_meeting() {
    for (int n = 3; n <= 8; ++n) {
        const Graph kn = build_topology(TopologySpec::complete(n));
        const Eigen::MatrixXd m = exact_meeting_times(build_joint_kernel(kn, JointVariant::X));
        const double want = n * (n - 1) / 2.0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y) continue;
                require(std::abs(m(x, y) - want) <= 1e-9 * want,
                        "K" + std::to_string(n) + ": M = " + fmt(m(x, y)));
            }
    }

    const Graph k16 = build_topology(TopologySpec::complete(16));
    const McEstimate est = mc_meeting_time(k16, 0, 1, 10000, 424242);
    require(est.std_error.has_value(), "K16 estimate lacks a standard error");
    require(std::abs(est.mean - 120.0) <= 3.0 * *est.std_error,
            "K16 MC mean " + fmt(est.mean) + " not within 3 se (" +
                fmt(*est.std_error) + ") of 120");
}

void criterion_5_meeting_vs_hitting() {
    std::vector<std::pair<std::string, Graph>> graphs = named_catalog(3, 7);
    for (int rep = 0; rep < 100; ++rep)
        graphs.emplace_back("random_" + std::to_string(rep),
                            random_connected(4 + rep % 4, 6000 + rep));

    for (const auto& [name, g] : graphs) {
        const double h = max_hitting_time(build_kernel(g, WalkKind::Biased)).value;
        const double m =
            exact_meeting_times(build_joint_kernel(g, JointVariant::X)).maxCoeff();
        require(m <= 4.0 * h * (1 + 1e-9),
                name + ": M = " + fmt(m) + " exceeds 4H = " + fmt(4 * h));
    }
}

void criterion_6_cyclic_identity() {
    std::vector<Graph> graphs;
    for (int rep = 0; rep < 10; ++rep) graphs.push_back(random_connected(6 + rep, 8800 + rep));
    graphs.push_back(build_topology(TopologySpec::star(9)));
    graphs.push_back(build_topology(TopologySpec::grid(3, 4)));

    Rng rng(31337);
    int checked = 0;
    while (checked < 500) {
        const Graph& g = graphs[checked % graphs.size()];
        const TransitionKernel b = build_kernel(g, WalkKind::Biased);
        const int n = g.node_count();
        const int x = rng.uniform_int(n), y = rng.uniform_int(n), z = rng.uniform_int(n);
        const Eigen::MatrixXd h = hitting_time_matrix(b);
        const double lhs = h(x, y) + h(y, z) + h(z, x);
        const double rhs = h(x, z) + h(z, y) + h(y, x);
        const double residual = cyclic_identity_residual(b, x, y, z);
        require(residual <= 1e-8 * std::max({lhs, rhs, 1.0}),
                "triple residual " + fmt(residual) + " too large");
        ++checked;
    }
}

void criterion_7_hidden_vertex_and_detailed_balance() {
    std::vector<std::pair<std::string, Graph>> graphs;
    for (int n : {4, 8, 13, 21, 34, 50}) {
        auto named = named_catalog(n, n);
        graphs.insert(graphs.end(), named.begin(), named.end());
    }
    for (int rep = 0; rep < 30; ++rep)
        graphs.emplace_back("random_" + std::to_string(rep),
                            random_connected(5 + rep % 26, 9100 + rep));

    for (const auto& [name, g] : graphs) {
        const TransitionKernel b = build_kernel(g, WalkKind::Biased);
        const Eigen::VectorXd uniform =
            Eigen::VectorXd::Constant(g.node_count(), 1.0 / g.node_count());
        require(is_reversible(b, uniform, 1e-12), name + ": detailed balance fails");
        const int t = find_hidden_vertex(b);  // throws if none exists
        require(t >= 0 && t < g.node_count(), name + ": bad hidden vertex");
    }
}

void criterion_8_protocol_invariants() {
    const std::vector<Graph> graphs = {
        build_topology(TopologySpec::complete(10)), build_topology(TopologySpec::path(16)),
        build_topology(TopologySpec::cycle(12)),    build_topology(TopologySpec::star(10)),
        build_topology(TopologySpec::grid(4, 4)),   random_connected(12, 4242)};

    const int runs_per_graph = 167;  // 6 graphs -> 1002 runs
    long long converged_runs = 0, total_runs = 0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = graphs[gi];
        const int n = g.node_count();
        for (int rep = 0; rep < runs_per_graph; ++rep) {
            ++total_runs;
            Rng init_rng = Rng::derive({static_cast<std::uint64_t>(gi), static_cast<std::uint64_t>(rep), 0xACCE});
            const InitKind kind = rep % 3 == 0 ? InitKind::BinaryExtremal
                                 : rep % 3 == 1 ? InitKind::Uniform
                                                : InitKind::Spike;
            const long long spread = 2 + rep % 5;
            std::vector<long long> values = make_initial_values(kind, n, spread, init_rng);
            const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
            const long long gap = *mx - *mn;  // actual M - m of this start

            ConsensusState state = init_state(g, values);
            const long long q_sum = state.q_sum;
            const long long cap = default_max_ticks(n, spread, 64.0);
            double lyap = lyapunov(state);

            Rng rng = Rng::derive(
                {static_cast<std::uint64_t>(gi), static_cast<std::uint64_t>(rep), 0xB5});
            while (!is_converged(state) && state.tick < cap) {
                const TickEvent e = step(state, g, rng);
                long long sum = 0;
                for (long long v : state.values) sum += v;
                require(sum == q_sum, "sum conservation violated");
                const double new_lyap = lyapunov(state);
                if (e.kind == MeetingKind::NonTrivial) {
                    require(lyap - new_lyap >= 2.0 - 1e-9, "Lyapunov decrement < 2");
                    require(std::abs((lyap - new_lyap) - e.lyapunov_delta) <= 1e-9,
                            "Lyapunov delta mismatch");
                } else {
                    require(std::abs(new_lyap - lyap) <= 1e-12, "Lyapunov changed on swap");
                }
                lyap = new_lyap;
            }
            // count <= (M-m)^2 n / 8, checked by cross-multiplication
            require(state.nontrivial_count * 8 <= gap * gap * n,
                    "non-trivial meeting budget exceeded: " +
                        std::to_string(state.nontrivial_count));
            if (is_converged(state)) {
                ++converged_runs;
                for (long long v : state.values)
                    require(v == state.q || v == state.q + 1,
                            "converged state outside {q, q+1}");
            }
        }
    }
    require(converged_runs * 100 >= total_runs * 99,
            "convergence rate below 99%: " + std::to_string(converged_runs) + "/" +
                std::to_string(total_runs));
}

void criterion_9_scaling_probes() {
    SweepConfig complete_cfg;
    complete_cfg.topologies = {"complete"};
    complete_cfg.sizes = {8, 16, 32, 64, 128};
    complete_cfg.init_kind = InitKind::BinaryExtremal;
    complete_cfg.spread = 2;
    complete_cfg.trials = 100;
    complete_cfg.master_seed = 20240901;
    const SweepResult complete_result = run_sweep(complete_cfg);
    require(complete_result.failures == 0, "complete sweep had non-converged runs");
    require(complete_result.per_topology[0].fit.has_value(), "complete sweep lacks a fit");
    const double complete_slope = complete_result.per_topology[0].fit->slope;
    require(complete_slope >= 1.7 && complete_slope <= 2.4,
            "complete-graph slope " + fmt(complete_slope) + " outside [1.7, 2.4]");

    SweepConfig path_cfg;
    path_cfg.topologies = {"path"};
    path_cfg.sizes = {8, 16, 32, 64};
    path_cfg.init_kind = InitKind::BinaryExtremal;
    path_cfg.spread = 2;
    path_cfg.trials = 100;
    path_cfg.master_seed = 20240902;
    const SweepResult path_result = run_sweep(path_cfg);
    require(path_result.failures == 0, "path sweep hit the tick cap");
    double prev_mean = 0.0;
    for (const SizeSummary& s : path_result.per_topology[0].sizes) {
        const double envelope = 3.0 * std::pow(static_cast<double>(s.n), 3.0) *
                                std::log(s.n + 1.0) *
                                static_cast<double>((path_cfg.spread + 1) * (path_cfg.spread + 1));
        require(s.mean_ticks < envelope,
                "path n=" + std::to_string(s.n) + " mean " + fmt(s.mean_ticks) +
                    " above the 3n^3 ln-scaled envelope");
        require(s.mean_ticks > prev_mean, "path means not monotone in n");
        prev_mean = s.mean_ticks;
    }
    require(path_result.per_topology[0].fit.has_value(), "path sweep lacks a fit");
    const double path_slope = path_result.per_topology[0].fit->slope;
    require(path_slope <= 3.4, "path slope " + fmt(path_slope) + " above 3.4");
}

void criterion_10_sweep_determinism() {
    SweepConfig cfg;
    cfg.topologies = {"complete", "path", "erdos_renyi:0.4"};
    cfg.sizes = {4, 8, 12};
    cfg.init_kind = InitKind::Uniform;
    cfg.spread = 3;
    cfg.trials = 10;
    cfg.master_seed = 555;
    const SweepResult a = run_sweep(cfg);
    const SweepResult b = run_sweep(cfg);
    require(a.csv == b.csv, "CSV output differs between identical sweeps");
    require(!a.csv.empty() && a.runs == 90, "unexpected sweep shape");
}

}  // namespace

int main() {
    using Body = std::function<void()>;
    const std::vector<std::pair<std::string, Body>> criteria = {
        {"triangle fixture effective resistances (1, 0.75)", criterion_1_fig1_fixture},
        {"commute identity H(x,y)+H(y,x) = n r'_xy on 20 random graphs",
         criterion_2_commute_identity},
        {"hitting < 3n^3 and r' < 3n^2 on the full catalog, n in 4..50",
         criterion_3_hitting_and_resistance_bounds},
        {"complete-graph meeting time n(n-1)/2, exact n<=8 and MC n=16",
         criterion_4_complete_graph_meeting},
        {"meeting time <= 4 x hitting time on all catalog graphs n <= 7",
         criterion_5_meeting_vs_hitting},
        {"cyclic hitting identity residual <= 1e-8 over 500 triples",
         criterion_6_cyclic_identity},
        {"hidden vertex exists; detailed balance at 1e-12 with uniform pi",
         criterion_7_hidden_vertex_and_detailed_balance},
        {"protocol invariants over 10^3 seeded runs", criterion_8_protocol_invariants},
        {"scaling probes: complete slope in [1.7,2.4], path under cap, slope <= 3.4",
         criterion_9_scaling_probes},
        {"byte-identical sweep CSV for identical config and master seed",
         criterion_10_sweep_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            criteria[i].second();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty()) {
            std::printf("[PASS] criterion %zu: %s (%.2fs)\n", i + 1, criteria[i].first.c_str(),
                        secs);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %zu: %s: %s (%.2fs)\n", i + 1,
                        criteria[i].first.c_str(), error.c_str(), secs);
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
