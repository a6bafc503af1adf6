#include "qcon/walks.hpp"

#include <sstream>
#include <stdexcept>

namespace qcon {

const char* walk_kind_name(WalkKind kind) {
    switch (kind) {
        case WalkKind::Simple: return "simple";
        case WalkKind::Natural: return "natural";
        case WalkKind::Biased: return "biased";
    }
    return "unknown";
}

TransitionKernel build_kernel(const Graph& g, WalkKind kind) {
    const int n = g.node_count();
    TransitionKernel k{kind, n, Eigen::MatrixXd::Zero(n, n)};

    switch (kind) {
        case WalkKind::Simple:
            for (int i = 0; i < n; ++i)
                for (int j : g.neighbors(i)) k.p(i, j) = 1.0 / g.degree(i);
            break;
        case WalkKind::Natural:
            for (int i = 0; i < n; ++i) {
                k.p(i, i) = 1.0 - 1.0 / n;
                for (int j : g.neighbors(i)) k.p(i, j) = 1.0 / (static_cast<double>(n) * g.degree(i));
            }
            break;
        case WalkKind::Biased:
            for (auto [i, j] : g.edges()) {
                // one expression per edge keeps p exactly symmetric
                const double w = (1.0 / n) * (1.0 / g.degree(i) + 1.0 / g.degree(j));
                k.p(i, j) = w;
                k.p(j, i) = w;
            }
            for (int i = 0; i < n; ++i) {
                const double diag = 1.0 - k.p.row(i).sum();
                if (diag < -1e-12)
                    throw std::logic_error("biased kernel: negative diagonal (internal error)");
                k.p(i, i) = diag < 0.0 ? 0.0 : diag;
            }
            break;
    }
    return k;
}

Eigen::VectorXd stationary_distribution(const TransitionKernel& k) {
    const int n = k.n;
    // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    Eigen::MatrixXd a = k.p.transpose() - Eigen::MatrixXd::Identity(n, n);
    a.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;

    Eigen::VectorXd pi = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(b);
    const double residual = (k.p.transpose() * pi - pi).cwiseAbs().maxCoeff();
    if (!pi.allFinite() || residual > 1e-10)
        throw std::runtime_error("stationary_distribution: linear solve failed");
    return pi;
}

bool is_reversible(const TransitionKernel& k, const Eigen::VectorXd& pi, double tol) {
    if (pi.size() != k.n) throw std::invalid_argument("is_reversible: dimension mismatch");
    for (int i = 0; i < k.n; ++i)
        for (int j = i + 1; j < k.n; ++j)
            if (std::abs(pi(i) * k.p(i, j) - pi(j) * k.p(j, i)) > tol) return false;
    return true;
}

std::string to_csv(const TransitionKernel& k) {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < k.n; ++i) {
        for (int j = 0; j < k.n; ++j) {
            if (j) os << ",";
            os << k.p(i, j);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace qcon
