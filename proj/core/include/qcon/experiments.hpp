#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcon/consensus.hpp"
#include "qcon/topology.hpp"

namespace qcon {

/// A sweep runs `trials` seeded simulations for every (topology template,
/// size) combination. Topology templates are names: "complete", "path",
/// "cycle", "star", "grid" (sized by the largest divisor pair of n) or
/// "erdos_renyi:<p>".
struct SweepConfig {
    std::vector<std::string> topologies;
    std::vector<int> sizes;
    InitKind init_kind = InitKind::BinaryExtremal;
    long long spread = 2;
    int trials = 100;
    std::uint64_t master_seed = 1;
    double max_ticks_multiplier = 64.0;
};

/// ceil(multiplier * n^3 * ln(n+1) * (spread+1)^2): comfortably above the
/// expected convergence time, so hitting the cap indicates a defect rather
/// than bad luck.
long long default_max_ticks(int n, long long spread, double multiplier);

/// Resolves a topology template name at size n. Random kinds derive their
/// seed from (master_seed, template index, n).
TopologySpec resolve_template(const std::string& templ, int n, std::uint64_t master_seed,
                              int template_index);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;  // (log n, log mean_ticks)
};

/// Least-squares line through (ln n, ln mean_ticks). Requires >= 3 distinct
/// sizes and positive means.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& n_vs_mean);

struct SizeSummary {
    int n = 0;
    double mean_ticks = 0.0;
    double std_ticks = 0.0;
};

struct TopologySummary {
    std::string name;
    std::vector<SizeSummary> sizes;
    std::optional<ScalingFit> fit;  // present when >= 3 sizes were swept
};

struct SweepResult {
    std::string csv;  // header + one row per run, byte-stable for a config
    long long runs = 0;
    long long failures = 0;  // runs that hit the tick cap
    std::vector<TopologySummary> per_topology;

    std::string summary_json() const;
};

extern const char* const kSweepCsvHeader;

SweepResult run_sweep(const SweepConfig& cfg);

/// Parses a sweep config from JSON text; missing fields keep their defaults.
SweepConfig sweep_config_from_json(const std::string& text);

struct BoundReport {
    std::string name;
    int n = 0;
    double max_r_eff = 0.0;
    double bound_r = 0.0;
    double max_hitting = 0.0;   // exact, or MC estimate when hitting_via_mc
    double bound_h = 0.0;
    std::pair<int, int> witness_pair{0, 0};
    bool hitting_via_mc = false;        // exact solve skipped, n > 60
    std::optional<double> max_meeting;  // exact product-chain value, n <= 25
    std::optional<double> bound_m;      // 4 * max_hitting
    bool meeting_via_mc = false;        // exact solve skipped, size guard
    std::optional<double> mc_meeting;   // estimate when downgraded
    bool pass = false;
};

/// Checks max hitting < 3n^3, max effective resistance < 3n^2 and (when the
/// product chain is tractable) exact meeting <= 4 * hitting per graph. Checks
/// whose exact solve exceeds its size guard (hitting n > 60, meeting n > 25)
/// are downgraded to Monte Carlo estimates at the resistance witness pair and
/// flagged as such.
std::vector<BoundReport> verify_bounds(const std::vector<std::pair<std::string, Graph>>& graphs,
                                       std::uint64_t mc_seed = 1, long long mc_trials = 2000);

std::string bounds_report_json(const std::vector<BoundReport>& reports);

}  // namespace qcon
