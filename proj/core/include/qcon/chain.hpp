#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcon/graph.hpp"
#include "qcon/walks.hpp"

namespace qcon {

/// Expected steps to first reach `target` from every start node; the entry at
/// `target` is 0. Solved as an absorbing-chain linear system with residual
/// checked against 1e-9.
Eigen::VectorXd hitting_times_to(const TransitionKernel& k, int target);

/// H(i, j) for all ordered pairs; row = start, column = target.
Eigen::MatrixXd hitting_time_matrix(const TransitionKernel& k);

struct MaxHitting {
    double value = 0.0;
    std::pair<int, int> arg_pair{0, 0};
};
MaxHitting max_hitting_time(const TransitionKernel& k);

/// Joint law of two walkers driven by shared edge activations. Each tick
/// activates one edge; a walker moves iff it sits on an endpoint of that edge.
/// When the activated edge joins the two walkers they cross, which is the
/// meeting event (walkers never co-locate otherwise: a single move cannot land
/// on the co-walker since the crossing case covers exactly that edge).
///
/// Variant XPrime doubles the absorbing mass on the shared edge and removes it
/// from the stay probability. That law is not a valid distribution on every
/// graph (adjacent pairs may be left with negative stay mass, e.g. on K3), so
/// construction performs a feasibility check instead of silently clamping.
enum class JointVariant { X, XPrime };

class JointKernel {
public:
    struct Move {
        int next = 0;   // live-state index
        double prob = 0.0;
    };

    JointVariant variant() const { return variant_; }
    int node_count() const { return n_; }
    int live_state_count() const { return n_ * (n_ - 1); }

    int live_index(int a, int b) const { return a * (n_ - 1) + (b > a ? b - 1 : b); }
    std::pair<int, int> state_nodes(int idx) const {
        const int a = idx / (n_ - 1), rem = idx % (n_ - 1);
        const int b = rem >= a ? rem + 1 : rem;
        return {a, b};
    }

    const std::vector<Move>& moves(int idx) const { return moves_[idx]; }
    double stay_prob(int idx) const { return stay_[idx]; }
    double absorb_prob(int idx) const { return absorb_[idx]; }

private:
    friend JointKernel build_joint_kernel(const Graph&, JointVariant);
    JointVariant variant_ = JointVariant::X;
    int n_ = 0;
    std::vector<std::vector<Move>> moves_;
    std::vector<double> stay_;
    std::vector<double> absorb_;
};

JointKernel build_joint_kernel(const Graph& g, JointVariant variant);

/// M(x, y) for all ordered pairs via absorbing-chain solve; zero diagonal.
/// Guarded to n <= 60 (n(n-1) live states, dense solve); larger graphs should
/// use mc_meeting_time.
Eigen::MatrixXd exact_meeting_times(const JointKernel& jk);

/// Smallest node t with H(t, v) <= H(v, t) (up to solver tolerance) for all v.
/// Existence is guaranteed for reversible kernels; throws otherwise.
int find_hidden_vertex(const TransitionKernel& k);

/// phi(x, y) = H(x,y) + H(y,t) - H(t,y). Symmetric for reversible kernels by
/// the cyclic hitting identity; below 2 H(G) when t is a hidden vertex.
double potential(const TransitionKernel& k, int t, int x, int y);

/// |H(x,y)+H(y,z)+H(z,x) - H(x,z)-H(z,y)-H(y,x)|, zero for reversible chains.
double cyclic_identity_residual(const TransitionKernel& k, int x, int y, int z);

struct McEstimate {
    double mean = 0.0;
    std::optional<double> std_error;  // absent when trials == 1
    long long trials = 0;
};

/// Simulates the edge-activation process directly (independently of the
/// JointKernel construction) and reports the sample mean absorption tick.
McEstimate mc_meeting_time(const Graph& g, int x, int y, long long trials,
                           std::uint64_t seed);

/// All n tokens walk under edge activations (tokens on an activated edge swap
/// positions); reports the first tick at which the token starting at `start`
/// has shared an activated edge with every other token.
McEstimate mc_meet_all_time(const Graph& g, int start, long long trials,
                            std::uint64_t seed);

}  // namespace qcon
