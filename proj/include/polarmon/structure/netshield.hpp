#pragma once

#include <iosfwd>
#include <set>
#include <span>
#include <vector>

#include "polarmon/graphkit/graph.hpp"

namespace polarmon::structure {

struct EigenPair {
    double lambda = 0.0;
    std::vector<double> vec;  // unit 2-norm, non-negative
    int iterations = 0;
    double residual = 0.0;  // ||A u - lambda u||_inf
};

struct EigenOptions {
    double tol = 1e-10;
    int max_iter = 100000;
};

/// Thrown when the power iteration hits its cap. Carries the last iterate so
/// callers that can live with an approximation may still use it.
class EigenNonConvergence : public NonConvergence {
public:
    EigenNonConvergence(const std::string& what, EigenPair last)
        : NonConvergence(what, last.iterations, last.residual), last_(std::move(last)) {}
    const EigenPair& last() const { return last_; }

private:
    EigenPair last_;
};

/// Leading eigenpair of the adjacency matrix by power iteration on A + I
/// (the shift keeps bipartite graphs from oscillating between +l and -l)
/// from the uniform positive start. lambda is the Rayleigh quotient of A.
/// Converged when ||A u - lambda u||_inf <= tol * max(1, lambda).
EigenPair leading_eigenpair(const graphkit::InteractionGraph& g, const EigenOptions& options = {});

/// Shield value Sv(S) = sum_{i in S} 2 lambda u_i^2 - sum_{i,j in S} A_ij u_i u_j.
double shield_value(const graphkit::InteractionGraph& g, double lambda, std::span<const double> u,
                    std::span<const graphkit::NodeIndex> subset);

struct ShieldRanking {
    std::vector<graphkit::NodeIndex> selected;
    std::vector<double> shield_scores;  // marginal gain at selection time
    double lambda = 0.0;
    std::vector<double> eigvec;
    bool eigen_converged = true;
};

/// Greedy NetShield. Each step picks the unselected node maximizing
/// 2 lambda u_i^2 - 2 u_i sum_{j in S} A_ij u_j, ties to the smaller index.
/// O(n k + m) after the eigenpair. Throws InvalidArgument when k > n or k < 0.
ShieldRanking netshield(const graphkit::InteractionGraph& g, int k, const EigenOptions& options = {});

/// Same greedy on a precomputed eigenpair.
ShieldRanking netshield_with(const graphkit::InteractionGraph& g, int k, double lambda, std::span<const double> u);

/// Ids of the selected nodes.
std::set<UserId> selected_ids(const graphkit::InteractionGraph& g, const ShieldRanking& r);

/// rank,user_id,marginal_score (rank starts at 1).
void write_influencers_csv(std::ostream& out, const graphkit::InteractionGraph& g, const ShieldRanking& r);

}  // namespace polarmon::structure
