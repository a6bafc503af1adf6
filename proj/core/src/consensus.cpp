#include "qcon/consensus.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcon {

ConsensusState init_state(const Graph& g, std::vector<long long> values) {
    const int n = g.node_count();
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument("init_state: values length must equal node count");

    ConsensusState state;
    state.values = std::move(values);
    for (long long v : state.values) state.q_sum += v;
    // floored division keeps 0 <= r < n for negative sums too
    state.q = state.q_sum >= 0 ? state.q_sum / n : -((-state.q_sum + n - 1) / n);
    state.r = state.q_sum - state.q * n;
    return state;
}

TickEvent step(ConsensusState& state, const Graph& g, Rng& rng) {
    const int i = rng.uniform_int(g.node_count());
    const auto& nb = g.neighbors(i);
    const int j = nb[rng.uniform_int(static_cast<int>(nb.size()))];

    TickEvent event;
    event.initiator = i;
    event.partner = j;

    long long& vi = state.values[i];
    long long& vj = state.values[j];
    const long long gap = vi >= vj ? vi - vj : vj - vi;
    if (gap >= 2) {
        event.kind = MeetingKind::NonTrivial;
        event.lyapunov_delta = static_cast<double>(2 * gap - 2);
        if (vi < vj) {
            ++vi;
            --vj;
        } else {
            ++vj;
            --vi;
        }
        ++state.nontrivial_count;
    } else {
        event.kind = MeetingKind::Trivial;
        std::swap(vi, vj);
    }
    ++state.tick;
    return event;
}

double lyapunov(const ConsensusState& state) {
    const long long n = static_cast<long long>(state.values.size());
    __int128 sum = 0;
    for (long long v : state.values) {
        const __int128 d = static_cast<__int128>(n) * v - state.q_sum;
        sum += d * d;
    }
    return static_cast<double>(sum) / (static_cast<double>(n) * static_cast<double>(n));
}

bool is_converged(const ConsensusState& state) {
    for (long long v : state.values)
        if (v != state.q && v != state.q + 1) return false;
    return true;
}

SimRecord run(const Graph& g, std::vector<long long> values, std::uint64_t seed,
              long long max_ticks) {
    if (max_ticks < 1) throw std::invalid_argument("run: max_ticks must be >= 1");

    ConsensusState state = init_state(g, std::move(values));
    const auto [min_it, max_it] =
        std::minmax_element(state.values.begin(), state.values.end());

    SimRecord record;
    record.seed = seed;
    record.initial_spread = *max_it - *min_it;
    record.lyapunov_trace.emplace_back(0, lyapunov(state));

    const long long sample_every = std::max<long long>(1, (max_ticks + 999) / 1000);
    Rng rng(seed);
    while (!is_converged(state) && state.tick < max_ticks) {
        const TickEvent event = step(state, g, rng);
        if (event.kind == MeetingKind::NonTrivial || state.tick % sample_every == 0)
            record.lyapunov_trace.emplace_back(state.tick, lyapunov(state));
    }
    record.converged = is_converged(state);
    record.ticks = state.tick;
    record.nontrivial_meetings = state.nontrivial_count;
    return record;
}

const char* init_kind_name(InitKind kind) {
    switch (kind) {
        case InitKind::BinaryExtremal: return "binary_extremal";
        case InitKind::Uniform: return "uniform";
        case InitKind::Spike: return "spike";
    }
    return "unknown";
}

std::vector<long long> make_initial_values(InitKind kind, int n, long long spread,
                                           Rng& rng) {
    if (n < 1) throw std::invalid_argument("make_initial_values: n must be >= 1");
    if (spread < 1) throw std::invalid_argument("make_initial_values: spread must be >= 1");

    std::vector<long long> values(n, 0);
    switch (kind) {
        case InitKind::BinaryExtremal:
            for (int i = n / 2; i < n; ++i) values[i] = spread;
            rng.shuffle(values);
            break;
        case InitKind::Uniform:
            for (auto& v : values) v = rng.uniform_int(static_cast<int>(spread) + 1);
            break;
        case InitKind::Spike:
            values[0] = spread;
            break;
    }
    return values;
}

}  // namespace qcon
