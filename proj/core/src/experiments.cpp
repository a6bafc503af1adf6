#include "qcon/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qcon/chain.hpp"
#include "qcon/electric.hpp"
#include "qcon/walks.hpp"

namespace qcon {

using nlohmann::json;

long long default_max_ticks(int n, long long spread, double multiplier) {
    const double cap = multiplier * std::pow(static_cast<double>(n), 3.0) *
                       std::log(static_cast<double>(n) + 1.0) *
                       static_cast<double>((spread + 1) * (spread + 1));
    return static_cast<long long>(std::ceil(cap));
}

TopologySpec resolve_template(const std::string& templ, int n, std::uint64_t master_seed,
                              int template_index) {
    if (templ == "complete") return TopologySpec::complete(n);
    if (templ == "path") return TopologySpec::path(n);
    if (templ == "cycle") return TopologySpec::cycle(n);
    if (templ == "star") return TopologySpec::star(n);
    if (templ == "grid") {
        // largest divisor pair: rows <= cols, rows as close to sqrt(n) as possible
        int rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
        while (rows > 1 && n % rows != 0) --rows;
        return TopologySpec::grid(rows, n / rows);
    }
    if (templ.rfind("erdos_renyi:", 0) == 0) {
        const double p = std::stod(templ.substr(12));
        const std::uint64_t seed =
            Rng::derive({master_seed, static_cast<std::uint64_t>(template_index),
                         static_cast<std::uint64_t>(n)})
                .next_u64();
        return TopologySpec::erdos_renyi(n, p, seed);
    }
    throw std::invalid_argument("unknown topology template: " + templ);
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& n_vs_mean) {
    std::vector<double> xs, ys;
    for (auto [n, mean] : n_vs_mean) {
        if (!(mean > 0.0))
            throw std::invalid_argument("fit_scaling: mean ticks must be positive");
        xs.push_back(std::log(n));
        ys.push_back(std::log(mean));
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw std::invalid_argument("fit_scaling: need at least 3 distinct sizes");

    const double count = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    ScalingFit fit;
    const double denom = count * sxx - sx * sx;
    fit.slope = (count * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / count;
    const double ss_tot = syy - sy * sy / count;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += e * e;
    }
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) fit.points.emplace_back(xs[i], ys[i]);
    return fit;
}

const char* const kSweepCsvHeader =
    "topology,n,seed,trial,init_kind,spread,ticks,converged,nontrivial_meetings";

SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
    if (cfg.sizes.empty()) throw std::invalid_argument("sweep: no sizes given");
    if (cfg.topologies.empty()) throw std::invalid_argument("sweep: no topologies given");
    if (cfg.spread < 1) throw std::invalid_argument("sweep: spread must be >= 1");
    for (int n : cfg.sizes)
        if (n < 2) throw std::invalid_argument("sweep: sizes must be >= 2");

    SweepResult result;
    std::ostringstream csv;
    csv << kSweepCsvHeader << "\n";

    for (std::size_t ti = 0; ti < cfg.topologies.size(); ++ti) {
        TopologySummary topo_summary;
        std::vector<std::pair<double, double>> fit_points;
        for (int n : cfg.sizes) {
            const TopologySpec spec =
                resolve_template(cfg.topologies[ti], n, cfg.master_seed, static_cast<int>(ti));
            const Graph g = build_topology(spec);
            if (topo_summary.name.empty()) topo_summary.name = cfg.topologies[ti];
            const long long cap =
                default_max_ticks(g.node_count(), cfg.spread, cfg.max_ticks_multiplier);

            double sum = 0, sum_sq = 0;
            for (int trial = 0; trial < cfg.trials; ++trial) {
                Rng values_rng = Rng::derive({cfg.master_seed, static_cast<std::uint64_t>(ti),
                                              static_cast<std::uint64_t>(n),
                                              static_cast<std::uint64_t>(trial), 0xA});
                const std::uint64_t run_seed =
                    Rng::derive({cfg.master_seed, static_cast<std::uint64_t>(ti),
                                 static_cast<std::uint64_t>(n),
                                 static_cast<std::uint64_t>(trial), 0xB})
                        .next_u64();
                const auto values =
                    make_initial_values(cfg.init_kind, g.node_count(), cfg.spread, values_rng);
                const SimRecord rec = run(g, values, run_seed, cap);

                ++result.runs;
                if (!rec.converged) ++result.failures;
                const double ticks = static_cast<double>(rec.ticks);
                sum += ticks;
                sum_sq += ticks * ticks;

                csv << topology_name(spec) << "," << g.node_count() << "," << run_seed << ","
                    << trial << "," << init_kind_name(cfg.init_kind) << "," << cfg.spread << ","
                    << rec.ticks << "," << (rec.converged ? 1 : 0) << ","
                    << rec.nontrivial_meetings << "\n";
            }
            SizeSummary size_summary;
            size_summary.n = g.node_count();
            size_summary.mean_ticks = sum / cfg.trials;
            size_summary.std_ticks =
                cfg.trials > 1
                    ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / cfg.trials) / (cfg.trials - 1)))
                    : 0.0;
            topo_summary.sizes.push_back(size_summary);
            if (size_summary.mean_ticks > 0)
                fit_points.emplace_back(static_cast<double>(size_summary.n),
                                        size_summary.mean_ticks);
        }
        if (fit_points.size() >= 3) topo_summary.fit = fit_scaling(fit_points);
        result.per_topology.push_back(std::move(topo_summary));
    }
    result.csv = csv.str();
    return result;
}

std::string SweepResult::summary_json() const {
    json j;
    j["runs"] = runs;
    j["failures"] = failures;
    j["failures_exceed_1pct"] = runs > 0 && failures * 100 > runs;
    j["per_topology"] = json::array();
    for (const auto& topo : per_topology) {
        json jt;
        jt["name"] = topo.name;
        jt["sizes"] = json::array();
        for (const auto& s : topo.sizes)
            jt["sizes"].push_back(
                {{"n", s.n}, {"mean_ticks", s.mean_ticks}, {"std_ticks", s.std_ticks}});
        if (topo.fit) {
            jt["fit"] = {{"slope", topo.fit->slope},
                         {"intercept", topo.fit->intercept},
                         {"r2", topo.fit->r_squared}};
        } else {
            jt["fit"] = nullptr;
        }
        j["per_topology"].push_back(std::move(jt));
    }
    return j.dump(2) + "\n";
}

SweepConfig sweep_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    SweepConfig cfg;
    if (j.contains("topologies")) cfg.topologies = j["topologies"].get<std::vector<std::string>>();
    if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<int>>();
    if (j.contains("init")) {
        const std::string init = j["init"].get<std::string>();
        if (init == "binary_extremal") cfg.init_kind = InitKind::BinaryExtremal;
        else if (init == "uniform") cfg.init_kind = InitKind::Uniform;
        else if (init == "spike") cfg.init_kind = InitKind::Spike;
        else throw std::invalid_argument("sweep config: unknown init kind " + init);
    }
    if (j.contains("spread")) cfg.spread = j["spread"].get<long long>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("max_ticks_multiplier"))
        cfg.max_ticks_multiplier = j["max_ticks_multiplier"].get<double>();
    return cfg;
}

namespace {

// Biased-walk hitting time simulated through the edge-activation process; the
// walker moves whenever the activated edge touches it.
double mc_hitting_time(const Graph& g, int from, int to, long long trials,
                       std::uint64_t seed) {
    const int n = g.node_count();
    double sum = 0.0;
    for (long long t = 0; t < trials; ++t) {
        Rng rng = Rng::derive({seed, static_cast<std::uint64_t>(t), 0x417});
        int at = from;
        long long ticks = 0;
        while (at != to) {
            ++ticks;
            const int i = rng.uniform_int(n);
            const auto& nb = g.neighbors(i);
            const int j = nb[rng.uniform_int(static_cast<int>(nb.size()))];
            if (i == at) at = j;
            else if (j == at) at = i;
        }
        sum += static_cast<double>(ticks);
    }
    return sum / static_cast<double>(trials);
}

}  // namespace

std::vector<BoundReport> verify_bounds(const std::vector<std::pair<std::string, Graph>>& graphs,
                                       std::uint64_t mc_seed, long long mc_trials) {
    std::vector<BoundReport> reports;
    reports.reserve(graphs.size());
    for (const auto& [name, g] : graphs) {
        const int n = g.node_count();
        BoundReport report;
        report.name = name;
        report.n = n;

        const ResistanceBoundReport res = resistance_bound_report(g);
        report.max_r_eff = res.max_r_eff;
        report.bound_r = res.bound_r;
        report.witness_pair = res.witness_pair;
        report.bound_h = 3.0 * n * n * n;

        std::pair<int, int> hard_pair = res.witness_pair;
        if (n <= 60) {
            const TransitionKernel biased = build_kernel(g, WalkKind::Biased);
            const MaxHitting hit = max_hitting_time(biased);
            report.max_hitting = hit.value;
            hard_pair = hit.arg_pair;
        } else {
            // the commute maximizer is the resistance witness pair; estimate
            // one direction of it
            report.hitting_via_mc = true;
            report.max_hitting = mc_hitting_time(g, hard_pair.first, hard_pair.second,
                                                 mc_trials, mc_seed);
        }

        bool meeting_ok = true;
        report.bound_m = 4.0 * report.max_hitting;
        if (n <= 25) {
            const JointKernel jk = build_joint_kernel(g, JointVariant::X);
            const Eigen::MatrixXd m = exact_meeting_times(jk);
            report.max_meeting = m.maxCoeff();
            meeting_ok = *report.max_meeting <= *report.bound_m;
        } else {
            report.meeting_via_mc = true;
            const auto [x, y] = hard_pair;
            report.mc_meeting =
                mc_meeting_time(g, x, y == x ? (x + 1) % n : y, mc_trials, mc_seed).mean;
        }

        report.pass = report.max_r_eff < report.bound_r &&
                      report.max_hitting < report.bound_h && meeting_ok;
        reports.push_back(std::move(report));
    }
    return reports;
}

std::string bounds_report_json(const std::vector<BoundReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        json j;
        j["name"] = r.name;
        j["n"] = r.n;
        j["max_r_eff"] = r.max_r_eff;
        j["bound_r"] = r.bound_r;
        j["max_hitting"] = r.max_hitting;
        j["bound_h"] = r.bound_h;
        if (r.hitting_via_mc) j["hitting_via_mc"] = true;
        j["witness_pair"] = {r.witness_pair.first, r.witness_pair.second};
        if (r.max_meeting) j["max_meeting"] = *r.max_meeting;
        if (r.bound_m) j["bound_m"] = *r.bound_m;
        if (r.meeting_via_mc) {
            j["meeting_via_mc"] = true;
            if (r.mc_meeting) j["mc_meeting"] = *r.mc_meeting;
        }
        j["pass"] = r.pass;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

}  // namespace qcon
