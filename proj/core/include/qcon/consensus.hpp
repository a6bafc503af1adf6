#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qcon/graph.hpp"
#include "qcon/rng.hpp"

namespace qcon {

/// Protocol state. q_sum = q*n + r with 0 <= r < n (floored division, so
/// negative sums work); convergence means every value is in {q, q+1}.
struct ConsensusState {
    std::vector<long long> values;
    long long tick = 0;
    long long q_sum = 0;
    long long q = 0;
    long long r = 0;
    long long nontrivial_count = 0;
};

enum class MeetingKind { Trivial, NonTrivial };

struct TickEvent {
    int initiator = 0;
    int partner = 0;
    MeetingKind kind = MeetingKind::Trivial;
    double lyapunov_delta = 0.0;  // decrease of L; 2*gap - 2 when non-trivial
};

ConsensusState init_state(const Graph& g, std::vector<long long> values);

/// One clock tick: initiator uniform over nodes, partner uniform over its
/// neighbors. Gap >= 2 moves both values one unit toward each other
/// (non-trivial); otherwise the two values swap (trivial). The sum is
/// conserved exactly.
TickEvent step(ConsensusState& state, const Graph& g, Rng& rng);

/// L = sum_i (values_i - q_sum/n)^2, evaluated as an exact integer scaled by
/// n^2 to avoid floating drift: sum (n*values_i - q_sum)^2 / n^2.
double lyapunov(const ConsensusState& state);

bool is_converged(const ConsensusState& state);

struct SimRecord {
    bool converged = false;
    long long ticks = 0;
    long long nontrivial_meetings = 0;
    long long initial_spread = 0;  // max - min of the starting values
    std::vector<std::pair<long long, double>> lyapunov_trace;
    std::uint64_t seed = 0;
};

/// Steps until convergence or max_ticks. The Lyapunov value is sampled at tick
/// 0, on every non-trivial meeting and every ceil(max_ticks/1000) ticks.
/// Non-convergence is reported in the record, not thrown.
SimRecord run(const Graph& g, std::vector<long long> values, std::uint64_t seed,
              long long max_ticks);

enum class InitKind { BinaryExtremal, Uniform, Spike };

const char* init_kind_name(InitKind kind);

/// binary_extremal: half the nodes at 0 and half at `spread` (shuffled);
/// uniform: each value uniform over {0..spread}; spike: node 0 holds `spread`.
std::vector<long long> make_initial_values(InitKind kind, int n, long long spread,
                                           Rng& rng);

}  // namespace qcon
