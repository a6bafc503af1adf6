#include "qcon/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcon/rng.hpp"

namespace qcon {

Eigen::VectorXd hitting_times_to(const TransitionKernel& k, int target) {
    const int n = k.n;
    if (target < 0 || target >= n)
        throw std::invalid_argument("hitting_times_to: target out of range");

    // (I - Q) h = 1 over the n-1 non-target states.
    auto reduced = [target](int v) { return v < target ? v : v - 1; };
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n - 1, n - 1);
    for (int i = 0; i < n; ++i) {
        if (i == target) continue;
        for (int j = 0; j < n; ++j) {
            if (j == target) continue;
            a(reduced(i), reduced(j)) -= k.p(i, j);
        }
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n - 1);
    Eigen::VectorXd h = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(ones);
    const double residual = (a * h - ones).cwiseAbs().maxCoeff();
    if (!h.allFinite() || residual > 1e-9)
        throw std::runtime_error("hitting_times_to: singular system");

    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        if (i != target) full(i) = h(reduced(i));
    return full;
}

Eigen::MatrixXd hitting_time_matrix(const TransitionKernel& k) {
    Eigen::MatrixXd h(k.n, k.n);
    for (int target = 0; target < k.n; ++target)
        h.col(target) = hitting_times_to(k, target);
    return h;
}

MaxHitting max_hitting_time(const TransitionKernel& k) {
    MaxHitting best;
    for (int target = 0; target < k.n; ++target) {
        const Eigen::VectorXd h = hitting_times_to(k, target);
        for (int i = 0; i < k.n; ++i) {
            if (h(i) > best.value) {
                best.value = h(i);
                best.arg_pair = {i, target};
            }
        }
    }
    return best;
}

JointKernel build_joint_kernel(const Graph& g, JointVariant variant) {
    const int n = g.node_count();
    const TransitionKernel biased = build_kernel(g, WalkKind::Biased);

    JointKernel jk;
    jk.variant_ = variant;
    jk.n_ = n;
    const int states = jk.live_state_count();
    jk.moves_.resize(states);
    jk.stay_.assign(states, 0.0);
    jk.absorb_.assign(states, 0.0);

    // Per-node total move mass of one walker: sum of P^B over its neighbors.
    std::vector<double> move_mass(n, 0.0);
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v)) move_mass[v] += biased.p(v, u);

    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const int s = jk.live_index(a, b);
            const bool adjacent = g.has_edge(a, b);
            auto& moves = jk.moves_[s];
            moves.reserve(g.degree(a) + g.degree(b));

            for (int i : g.neighbors(a))
                if (i != b) moves.push_back({jk.live_index(i, b), biased.p(a, i)});
            for (int j : g.neighbors(b))
                if (j != a) moves.push_back({jk.live_index(a, j), biased.p(b, j)});

            double stay = 1.0 - move_mass[a] - move_mass[b];
            if (adjacent) {
                const double cross = biased.p(a, b);
                if (variant == JointVariant::X) {
                    jk.absorb_[s] = cross;
                    stay += cross;
                } else {
                    jk.absorb_[s] = 2.0 * cross;
                    // stay keeps the uncorrected value; may be infeasible
                }
            }
            if (stay < -1e-12) {
                if (variant == JointVariant::XPrime)
                    throw std::runtime_error(
                        "joint kernel XPrime infeasible: negative stay probability at pair (" +
                        std::to_string(a) + "," + std::to_string(b) + ")");
                throw std::logic_error("joint kernel: negative stay probability (defect)");
            }
            jk.stay_[s] = stay < 0.0 ? 0.0 : stay;
        }
    }
    return jk;
}

Eigen::MatrixXd exact_meeting_times(const JointKernel& jk) {
    const int n = jk.node_count();
    if (n > 60)
        throw std::invalid_argument(
            "exact_meeting_times: state space too large (n > 60); use mc_meeting_time");
    const int states = jk.live_state_count();

    // (I - Q) m = 1 over live states; absorption supplies the missing mass.
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(states, states);
    for (int s = 0; s < states; ++s) {
        a(s, s) -= jk.stay_prob(s);
        for (const auto& mv : jk.moves(s)) a(s, mv.next) -= mv.prob;
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(states);
    Eigen::VectorXd m = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(ones);
    const double residual = (a * m - ones).cwiseAbs().maxCoeff();
    if (!m.allFinite() || residual > 1e-9)
        throw std::runtime_error("exact_meeting_times: singular system");

    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y) full(x, y) = m(jk.live_index(x, y));
    return full;
}

int find_hidden_vertex(const TransitionKernel& k) {
    const Eigen::MatrixXd h = hitting_time_matrix(k);
    // Tolerance scales with the magnitude of the hitting times: equalities
    // like H(t,v) = H(v,t) on symmetric graphs are exact only up to the
    // independent linear solves.
    const double tol = 1e-9 * std::max(1.0, h.maxCoeff());
    for (int t = 0; t < k.n; ++t) {
        bool hidden = true;
        for (int v = 0; v < k.n && hidden; ++v)
            if (h(t, v) > h(v, t) + tol) hidden = false;
        if (hidden) return t;
    }
    throw std::runtime_error("find_hidden_vertex: none found (kernel not reversible?)");
}

double potential(const TransitionKernel& k, int t, int x, int y) {
    const Eigen::VectorXd to_y = hitting_times_to(k, y);
    const Eigen::VectorXd to_t = hitting_times_to(k, t);
    return to_y(x) + to_t(y) - to_y(t);
}

double cyclic_identity_residual(const TransitionKernel& k, int x, int y, int z) {
    const Eigen::VectorXd to_x = hitting_times_to(k, x);
    const Eigen::VectorXd to_y = hitting_times_to(k, y);
    const Eigen::VectorXd to_z = hitting_times_to(k, z);
    const double lhs = to_y(x) + to_z(y) + to_x(z);
    const double rhs = to_z(x) + to_y(z) + to_x(y);
    return std::abs(lhs - rhs);
}

namespace {

struct Activation {
    int u, v;
};

inline Activation draw_activation(const Graph& g, Rng& rng) {
    const int i = rng.uniform_int(g.node_count());
    const auto& nb = g.neighbors(i);
    return {i, nb[rng.uniform_int(static_cast<int>(nb.size()))]};
}

McEstimate summarize(const std::vector<double>& samples) {
    McEstimate est;
    est.trials = static_cast<long long>(samples.size());
    double sum = 0.0;
    for (double s : samples) sum += s;
    est.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double sq = 0.0;
        for (double s : samples) sq += (s - est.mean) * (s - est.mean);
        const double var = sq / (static_cast<double>(samples.size()) - 1.0);
        est.std_error = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return est;
}

}  // namespace

McEstimate mc_meeting_time(const Graph& g, int x, int y, long long trials,
                           std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("mc_meeting_time: trials must be >= 1");
    if (x == y) throw std::invalid_argument("mc_meeting_time: walkers must start apart");

    std::vector<double> samples;
    samples.reserve(trials);
    for (long long t = 0; t < trials; ++t) {
        Rng rng = Rng::derive({seed, static_cast<std::uint64_t>(t)});
        int a = x, b = y;
        long long ticks = 0;
        for (;;) {
            ++ticks;
            const auto [u, v] = draw_activation(g, rng);
            if ((u == a && v == b) || (u == b && v == a)) break;  // cross
            if (u == a || v == a) a = (u == a ? v : u);
            else if (u == b || v == b) b = (u == b ? v : u);
        }
        samples.push_back(static_cast<double>(ticks));
    }
    return summarize(samples);
}

McEstimate mc_meet_all_time(const Graph& g, int start, long long trials,
                            std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("mc_meet_all_time: trials must be >= 1");
    const int n = g.node_count();
    if (start < 0 || start >= n)
        throw std::invalid_argument("mc_meet_all_time: start out of range");

    std::vector<double> samples;
    samples.reserve(trials);
    for (long long t = 0; t < trials; ++t) {
        Rng rng = Rng::derive({seed, static_cast<std::uint64_t>(t), 0x6d65657475ull});
        std::vector<int> token_at(n);  // node -> token; initially identity
        for (int v = 0; v < n; ++v) token_at[v] = v;
        std::vector<char> met(n, 0);
        int remaining = n - 1;
        long long ticks = 0;
        while (remaining > 0) {
            ++ticks;
            const auto [u, v] = draw_activation(g, rng);
            const int ta = token_at[u], tb = token_at[v];
            token_at[u] = tb;
            token_at[v] = ta;
            int other = -1;
            if (ta == start) other = tb;
            else if (tb == start) other = ta;
            if (other >= 0 && !met[other]) {
                met[other] = 1;
                --remaining;
            }
        }
        samples.push_back(static_cast<double>(ticks));
    }
    return summarize(samples);
}

}  // namespace qcon
