// qcon: simulate the quantized consensus protocol, analyze its random-walk
// model, sweep convergence times across topologies and verify the proven
// bounds. Exit codes: 0 success, 1 usage error, 2 bound violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcon/chain.hpp"
#include "qcon/consensus.hpp"
#include "qcon/electric.hpp"
#include "qcon/experiments.hpp"
#include "qcon/rng.hpp"
#include "qcon/topology.hpp"
#include "qcon/walks.hpp"

using namespace qcon;
using nlohmann::json;

namespace {

struct TopologyFlags {
    std::string kind = "complete";
    int n = 8;
    int rows = 0, cols = 0;
    double p = 0.3;
    std::uint64_t graph_seed = 1;
    std::string edge_list_file;
};

void add_topology_flags(CLI::App* cmd, TopologyFlags& flags) {
    cmd->add_option("--topology", flags.kind,
                    "complete|path|cycle|star|grid|erdos_renyi")
        ->capture_default_str();
    cmd->add_option("--n", flags.n, "node count")->capture_default_str();
    cmd->add_option("--rows", flags.rows, "grid rows");
    cmd->add_option("--cols", flags.cols, "grid cols");
    cmd->add_option("--p", flags.p, "erdos_renyi edge probability")->capture_default_str();
    cmd->add_option("--graph-seed", flags.graph_seed, "seed for random topologies")
        ->capture_default_str();
    cmd->add_option("--edge-list", flags.edge_list_file,
                    "read the graph from an edge-list file instead");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::pair<std::string, Graph> make_graph(const TopologyFlags& flags) {
    if (!flags.edge_list_file.empty())
        return {"edge_list", load_edge_list(read_file(flags.edge_list_file))};

    TopologySpec spec;
    if (flags.kind == "complete") spec = TopologySpec::complete(flags.n);
    else if (flags.kind == "path") spec = TopologySpec::path(flags.n);
    else if (flags.kind == "cycle") spec = TopologySpec::cycle(flags.n);
    else if (flags.kind == "star") spec = TopologySpec::star(flags.n);
    else if (flags.kind == "grid") {
        if (flags.rows < 1 || flags.cols < 1)
            throw CLI::ValidationError("grid topology needs --rows and --cols");
        spec = TopologySpec::grid(flags.rows, flags.cols);
    } else if (flags.kind == "erdos_renyi") {
        spec = TopologySpec::erdos_renyi(flags.n, flags.p, flags.graph_seed);
    } else {
        throw CLI::ValidationError("unknown topology " + flags.kind);
    }
    return {topology_name(spec), build_topology(spec)};
}

InitKind parse_init(const std::string& name) {
    if (name == "binary_extremal") return InitKind::BinaryExtremal;
    if (name == "uniform") return InitKind::Uniform;
    if (name == "spike") return InitKind::Spike;
    throw CLI::ValidationError("unknown init kind " + name);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// --- simulate ---------------------------------------------------------------

int run_simulate(const TopologyFlags& topo, const std::string& init_name,
                 long long spread, std::uint64_t seed, int trials, double multiplier,
                 const std::string& output) {
    const auto [name, g] = make_graph(topo);
    const InitKind init = parse_init(init_name);
    const long long cap = default_max_ticks(g.node_count(), spread, multiplier);

    std::ostringstream csv;
    csv << kSweepCsvHeader << "\n";
    for (int trial = 0; trial < trials; ++trial) {
        Rng values_rng = Rng::derive({seed, static_cast<std::uint64_t>(trial), 0xA});
        const std::uint64_t run_seed =
            Rng::derive({seed, static_cast<std::uint64_t>(trial), 0xB}).next_u64();
        const auto values = make_initial_values(init, g.node_count(), spread, values_rng);
        const SimRecord rec = run(g, values, run_seed, cap);
        csv << name << "," << g.node_count() << "," << run_seed << "," << trial << ","
            << init_kind_name(init) << "," << spread << "," << rec.ticks << ","
            << (rec.converged ? 1 : 0) << "," << rec.nontrivial_meetings << "\n";
    }
    write_output(output, csv.str());
    return 0;
}

// --- analyze ----------------------------------------------------------------

int run_analyze(const TopologyFlags& topo, const std::string& kind_name,
                long long mc_trials, std::uint64_t seed, const std::string& output) {
    const auto [name, g] = make_graph(topo);
    const int n = g.node_count();
    WalkKind kind = WalkKind::Biased;
    if (kind_name == "simple") kind = WalkKind::Simple;
    else if (kind_name == "natural") kind = WalkKind::Natural;
    else if (kind_name != "biased") throw CLI::ValidationError("unknown walk kind");

    const TransitionKernel kernel = build_kernel(g, kind);
    const MaxHitting hit = max_hitting_time(kernel);

    json out;
    out["name"] = name;
    out["n"] = n;
    out["kind"] = walk_kind_name(kind);
    out["max_hitting"] = hit.value;
    out["hitting_bound"] = 3.0 * n * n * n;

    std::pair<int, int> mc_pair = hit.arg_pair;
    if (n <= 25) {
        const Eigen::MatrixXd m = exact_meeting_times(build_joint_kernel(g, JointVariant::X));
        int bx = 0, by = 1;
        m.maxCoeff(&bx, &by);
        mc_pair = {bx, by};
        out["exact_meeting_max"] = m.maxCoeff();
    }
    if (mc_pair.first == mc_pair.second) mc_pair.second = (mc_pair.first + 1) % n;
    const McEstimate mc = mc_meeting_time(g, mc_pair.first, mc_pair.second, mc_trials, seed);
    out["mc_meeting"] = {{"from", mc_pair.first},
                         {"to", mc_pair.second},
                         {"mean", mc.mean},
                         {"stderr", mc.std_error ? json(*mc.std_error) : json(nullptr)},
                         {"trials", mc.trials}};

    try {
        out["hidden_vertex"] = find_hidden_vertex(kernel);
    } catch (const std::runtime_error&) {
        out["hidden_vertex"] = nullptr;  // non-reversible kernels may lack one
    }

    Rng rng(seed);
    double worst = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
        const int x = rng.uniform_int(n), y = rng.uniform_int(n), z = rng.uniform_int(n);
        worst = std::max(worst, cyclic_identity_residual(kernel, x, y, z));
    }
    out["identity_residuals_max"] = worst;

    write_output(output, out.dump(2) + "\n");
    return 0;
}

// --- sweep ------------------------------------------------------------------

int run_sweep_cmd(const SweepConfig& cfg, const std::string& csv_path,
                  const std::string& summary_path) {
    const SweepResult result = run_sweep(cfg);
    write_output(csv_path, result.csv);
    if (!summary_path.empty()) write_output(summary_path, result.summary_json());
    return 0;
}

// --- verify-bounds ----------------------------------------------------------

TopologySpec parse_spec_string(const std::string& text) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.empty()) throw CLI::ValidationError("empty graph spec");
    const std::string& kind = parts[0];
    auto arg = [&](std::size_t i) -> int {
        if (i >= parts.size()) throw CLI::ValidationError("spec " + text + ": missing argument");
        return std::stoi(parts[i]);
    };
    if (kind == "complete") return TopologySpec::complete(arg(1));
    if (kind == "path") return TopologySpec::path(arg(1));
    if (kind == "cycle") return TopologySpec::cycle(arg(1));
    if (kind == "star") return TopologySpec::star(arg(1));
    if (kind == "grid") return TopologySpec::grid(arg(1), arg(2));
    if (kind == "erdos_renyi")
        return TopologySpec::erdos_renyi(arg(1), std::stod(parts.at(2)),
                                         parts.size() > 3 ? std::stoull(parts[3]) : 1);
    throw CLI::ValidationError("unknown graph spec kind " + kind);
}

int run_verify_bounds(const std::vector<std::string>& spec_strings, int random_count,
                      int n_min, int n_max, std::uint64_t seed, long long mc_trials,
                      const std::string& output) {
    std::vector<std::pair<std::string, Graph>> graphs;
    for (const std::string& s : spec_strings) {
        const TopologySpec spec = parse_spec_string(s);
        graphs.emplace_back(topology_name(spec) + "_" + std::to_string(spec.n),
                            build_topology(spec));
    }
    for (int rep = 0; rep < random_count; ++rep) {
        const int n = n_min + (n_max > n_min ? rep % (n_max - n_min + 1) : 0);
        const double p = std::min(1.0, 2.0 * std::log(n + 1.0) / n);
        const auto spec = TopologySpec::erdos_renyi(
            n, p, Rng::derive({seed, static_cast<std::uint64_t>(rep)}).next_u64());
        graphs.emplace_back("random_" + std::to_string(rep) + "_n" + std::to_string(n),
                            build_topology(spec));
    }
    if (graphs.empty()) throw CLI::ValidationError("no graphs given; use --spec or --random");

    const std::vector<BoundReport> reports = verify_bounds(graphs, seed, mc_trials);
    write_output(output, bounds_report_json(reports));
    for (const BoundReport& r : reports)
        if (!r.pass) return 2;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantized consensus simulator and random-walk analysis toolkit"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run seeded consensus simulations");
    TopologyFlags sim_topo;
    add_topology_flags(sim, sim_topo);
    std::string sim_init = "binary_extremal";
    long long sim_spread = 2;
    std::uint64_t sim_seed = 1;
    int sim_trials = 1;
    double sim_multiplier = 64.0;
    std::string sim_output = "-";
    sim->add_option("--init", sim_init, "binary_extremal|uniform|spike")
        ->capture_default_str();
    sim->add_option("--spread", sim_spread, "initial value spread D")->capture_default_str();
    sim->add_option("--seed", sim_seed, "master seed")->capture_default_str();
    sim->add_option("--trials", sim_trials, "number of runs")->capture_default_str();
    sim->add_option("--multiplier", sim_multiplier, "max-ticks cap multiplier")
        ->capture_default_str();
    sim->add_option("--output", sim_output, "CSV destination (- for stdout)")
        ->capture_default_str();

    // analyze
    auto* ana = app.add_subcommand("analyze", "exact hitting/meeting analysis of a graph");
    TopologyFlags ana_topo;
    add_topology_flags(ana, ana_topo);
    std::string ana_kind = "biased";
    long long ana_mc_trials = 2000;
    std::uint64_t ana_seed = 1;
    std::string ana_output = "-";
    ana->add_option("--kind", ana_kind, "simple|natural|biased")->capture_default_str();
    ana->add_option("--mc-trials", ana_mc_trials, "Monte Carlo meeting trials")
        ->capture_default_str();
    ana->add_option("--seed", ana_seed, "seed for Monte Carlo and triple sampling")
        ->capture_default_str();
    ana->add_option("--output", ana_output, "JSON destination (- for stdout)")
        ->capture_default_str();

    // sweep
    auto* swp = app.add_subcommand("sweep", "convergence-time sweep across sizes");
    std::string swp_config;
    std::vector<std::string> swp_topologies;
    std::vector<int> swp_sizes;
    std::string swp_init;
    long long swp_spread = -1;
    int swp_trials = -1;
    std::uint64_t swp_seed = 0;
    bool swp_seed_set = false;
    double swp_multiplier = -1.0;
    std::string swp_csv = "-";
    std::string swp_summary;
    swp->add_option("--config", swp_config, "JSON config file (flags override it)");
    swp->add_option("--topologies", swp_topologies,
                    "topology templates, e.g. complete path erdos_renyi:0.3");
    swp->add_option("--sizes", swp_sizes, "node counts");
    swp->add_option("--init", swp_init, "binary_extremal|uniform|spike");
    swp->add_option("--spread", swp_spread, "initial value spread D");
    swp->add_option("--trials", swp_trials, "runs per (topology, size)");
    swp->add_option("--master-seed", swp_seed, "master seed")
        ->each([&](const std::string&) { swp_seed_set = true; });
    swp->add_option("--multiplier", swp_multiplier, "max-ticks cap multiplier");
    swp->add_option("--csv", swp_csv, "CSV destination (- for stdout)")
        ->capture_default_str();
    swp->add_option("--summary", swp_summary, "summary JSON destination (- for stdout)");

    // verify-bounds
    auto* vfy = app.add_subcommand("verify-bounds",
                                   "check hitting/resistance/meeting bounds per graph");
    std::vector<std::string> vfy_specs;
    int vfy_random = 0, vfy_nmin = 4, vfy_nmax = 12;
    std::uint64_t vfy_seed = 1;
    long long vfy_mc_trials = 2000;
    std::string vfy_output = "-";
    vfy->add_option("--spec", vfy_specs,
                    "graph spec, e.g. complete:8 grid:3:4 erdos_renyi:10:0.4:7 (repeatable)");
    vfy->add_option("--random", vfy_random, "additionally check this many random graphs")
        ->capture_default_str();
    vfy->add_option("--n-min", vfy_nmin, "random graph minimum size")->capture_default_str();
    vfy->add_option("--n-max", vfy_nmax, "random graph maximum size")->capture_default_str();
    vfy->add_option("--seed", vfy_seed, "seed for random graphs")->capture_default_str();
    vfy->add_option("--mc-trials", vfy_mc_trials,
                    "Monte Carlo trials when the exact meeting solve is too large")
        ->capture_default_str();
    vfy->add_option("--output", vfy_output, "JSON destination (- for stdout)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 0 for --help, 1 for usage errors
    }

    try {
        if (sim->parsed())
            return run_simulate(sim_topo, sim_init, sim_spread, sim_seed, sim_trials,
                                sim_multiplier, sim_output);
        if (ana->parsed())
            return run_analyze(ana_topo, ana_kind, ana_mc_trials, ana_seed, ana_output);
        if (swp->parsed()) {
            SweepConfig cfg;
            if (!swp_config.empty()) cfg = sweep_config_from_json(read_file(swp_config));
            if (!swp_topologies.empty()) cfg.topologies = swp_topologies;
            if (!swp_sizes.empty()) cfg.sizes = swp_sizes;
            if (!swp_init.empty()) cfg.init_kind = parse_init(swp_init);
            if (swp_spread >= 0) cfg.spread = swp_spread;
            if (swp_trials >= 0) cfg.trials = swp_trials;
            if (swp_seed_set) cfg.master_seed = swp_seed;
            if (swp_multiplier >= 0) cfg.max_ticks_multiplier = swp_multiplier;
            return run_sweep_cmd(cfg, swp_csv, swp_summary);
        }
        if (vfy->parsed())
            return run_verify_bounds(vfy_specs, vfy_random, vfy_nmin, vfy_nmax, vfy_seed,
                                     vfy_mc_trials, vfy_output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
