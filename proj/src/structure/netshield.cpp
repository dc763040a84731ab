#include "polarmon/structure/netshield.hpp"

#include <cmath>
#include <ostream>

namespace polarmon::structure {

EigenPair leading_eigenpair(const graphkit::InteractionGraph& g, const EigenOptions& options) {
    const std::size_t n = g.node_count();
    if (n == 0) throw InvalidArgument("leading eigenpair of an empty graph");
    const auto& k = simd::kernels();

    EigenPair ep;
    ep.vec.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> au(n), next(n);
    for (int it = 0;; ++it) {
        k.adjacency_spmv(g.csr(), 0.0, ep.vec, au);
        ep.lambda = k.dot(ep.vec, au);
        // ||A u - lambda u||_inf
        next.assign(au.begin(), au.end());
        k.axpy(-ep.lambda, ep.vec, next);
        ep.residual = k.max_abs(next);
        ep.iterations = it;
        if (ep.residual <= options.tol * std::max(1.0, ep.lambda)) break;
        if (it >= options.max_iter)
            throw EigenNonConvergence("power iteration did not converge (residual " + format_double(ep.residual) +
                                          "); spectrum may be degenerate",
                                      ep);
        // (A + I) u, normalized
        k.axpy(1.0, ep.vec, au);
        const double norm = std::sqrt(k.sum_squares(au));
        k.scale(au, 1.0 / norm);
        ep.vec.swap(au);
    }
    for (double& v : ep.vec) v = std::fabs(v);
    if (ep.lambda < 0.0) ep.lambda = 0.0;
    return ep;
}

double shield_value(const graphkit::InteractionGraph& g, double lambda, std::span<const double> u,
                    std::span<const graphkit::NodeIndex> subset) {
    double v = 0.0;
    for (auto i : subset) v += 2.0 * lambda * u[i] * u[i];
    for (auto i : subset)
        for (auto j : subset)
            if (i != j && g.has_edge(i, j)) v -= u[i] * u[j];
    return v;
}

ShieldRanking netshield_with(const graphkit::InteractionGraph& g, int k, double lambda, std::span<const double> u) {
    const std::size_t n = g.node_count();
    if (k < 0 || static_cast<std::size_t>(k) > n) throw InvalidArgument("netshield: k must lie in [0, n]");
    ShieldRanking r;
    r.lambda = lambda;
    r.eigvec.assign(u.begin(), u.end());
    if (k == 0) return r;

    const auto& kt = simd::kernels();
    // b_i = sum_{j in S} A_ij u_j, maintained as nodes join S.
    std::vector<double> b(n, 0.0);
    std::vector<std::uint8_t> chosen(n, 0);
    for (int step = 0; step < k; ++step) {
        double score = 0.0;
        const std::int64_t best = kt.shield_argmax(lambda, u, b, chosen, &score);
        if (best < 0) break;
        const auto node = static_cast<graphkit::NodeIndex>(best);
        chosen[static_cast<std::size_t>(best)] = 1;
        r.selected.push_back(node);
        r.shield_scores.push_back(score);
        for (auto j : g.neighbors(node)) b[static_cast<std::size_t>(j)] += u[static_cast<std::size_t>(best)];
    }
    return r;
}

ShieldRanking netshield(const graphkit::InteractionGraph& g, int k, const EigenOptions& options) {
    if (k < 0 || static_cast<std::size_t>(k) > g.node_count()) throw InvalidArgument("netshield: k must lie in [0, n]");
    if (k == 0) return {};
    const EigenPair ep = leading_eigenpair(g, options);
    return netshield_with(g, k, ep.lambda, ep.vec);
}

std::set<UserId> selected_ids(const graphkit::InteractionGraph& g, const ShieldRanking& r) {
    std::set<UserId> out;
    for (auto i : r.selected) out.insert(g.id(i));
    return out;
}

void write_influencers_csv(std::ostream& out, const graphkit::InteractionGraph& g, const ShieldRanking& r) {
    out << "rank,user_id,marginal_score\n";
    for (std::size_t i = 0; i < r.selected.size(); ++i)
        out << (i + 1) << ',' << g.id(r.selected[i]) << ',' << format_double(r.shield_scores[i]) << '\n';
}

}  // namespace polarmon::structure
