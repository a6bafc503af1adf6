#pragma once

#include <string>

#include <Eigen/Dense>

#include "qcon/graph.hpp"

namespace qcon {

enum class WalkKind { Simple, Natural, Biased };

/// Single-walker transition kernel. Rows sum to 1; support is restricted to
/// edges plus the diagonal.
///
///   Simple:  p_ij = 1/deg(i), zero diagonal.
///   Natural: p_ij = 1/(n deg(i)), diagonal exactly 1 - 1/n.
///   Biased:  p_ij = (1/n)(1/deg(i) + 1/deg(j)), hence symmetric. This is the
///            law a value actually follows under the gossip dynamics: node i's
///            own clock contributes 1/(n deg(i)) and the neighbor's clock
///            1/(n deg(j)), so p_ij is the natural rate plus its transpose.
struct TransitionKernel {
    WalkKind kind = WalkKind::Biased;
    int n = 0;
    Eigen::MatrixXd p;
};

const char* walk_kind_name(WalkKind kind);

TransitionKernel build_kernel(const Graph& g, WalkKind kind);

/// Solves pi P = pi, sum(pi) = 1 by direct linear solve, so periodic chains
/// (e.g. the simple walk on a path) need no special handling. Residual is
/// checked against 1e-10.
Eigen::VectorXd stationary_distribution(const TransitionKernel& k);

/// Detailed balance: true iff |pi_i p_ij - pi_j p_ji| <= tol for all i, j.
bool is_reversible(const TransitionKernel& k, const Eigen::VectorXd& pi, double tol);

/// Matrix dump for debugging.
std::string to_csv(const TransitionKernel& k);

}  // namespace qcon
