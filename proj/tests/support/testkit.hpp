#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.
// Nothing here calls the code under test except to build graphs.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polarmon/corpus/tweet.hpp"
#include "polarmon/graphkit/graph.hpp"

namespace testkit {

using polarmon::graphkit::InteractionGraph;
using polarmon::graphkit::NodeIndex;

// Zero padded so that node index i is the node named node_id(i).
inline std::string node_id(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%04d", i);
    return buf;
}

inline InteractionGraph graph_from(int n, const std::vector<std::pair<int, int>>& edges) {
    std::set<std::string> nodes;
    for (int i = 0; i < n; ++i) nodes.insert(node_id(i));
    std::vector<std::pair<std::string, std::string>> e;
    for (auto [a, b] : edges) e.emplace_back(node_id(a), node_id(b));
    return InteractionGraph::from_edges(std::move(nodes), e);
}

inline std::vector<std::pair<int, int>> gnp_edges(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) e.emplace_back(i, j);
    return e;
}

inline InteractionGraph gnp(int n, double p, std::mt19937_64& rng) { return graph_from(n, gnp_edges(n, p, rng)); }

inline bool connected(const InteractionGraph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<NodeIndex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const NodeIndex v = stack.back();
        stack.pop_back();
        for (NodeIndex w : g.neighbors(v))
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

inline InteractionGraph connected_gnp(int n, double p, std::mt19937_64& rng) {
    for (;;) {
        InteractionGraph g = gnp(n, p, rng);
        if (connected(g)) return g;
    }
}

inline std::vector<double> ternary_opinions(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-1, 1);
    std::vector<double> s(n);
    for (auto& v : s) v = d(rng);
    return s;
}

inline Eigen::MatrixXd adjacency(const InteractionGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : g.edges()) a(i, j) = a(j, i) = 1.0;
    return a;
}

// Dense LU solve of (I + L) z = s.
inline std::vector<double> dense_fj(const InteractionGraph& g, const std::vector<double>& s) {
    const Eigen::MatrixXd a = adjacency(g);
    const auto n = a.rows();
    Eigen::MatrixXd m = -a;
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1.0 + a.row(i).sum();
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(s.data(), n);
    const Eigen::VectorXd z = m.partialPivLu().solve(rhs);
    return {z.data(), z.data() + n};
}

// Q = 1/2m sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j], straight from the matrix.
inline double modularity_oracle(const InteractionGraph& g, const std::vector<int>& c) {
    const Eigen::MatrixXd a = adjacency(g);
    const double two_m = a.sum();
    if (two_m == 0.0) return 0.0;
    const Eigen::VectorXd k = a.rowwise().sum();
    double q = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.rows(); ++j)
            if (c[static_cast<std::size_t>(i)] == c[static_cast<std::size_t>(j)]) q += a(i, j) - k(i) * k(j) / two_m;
    return q / two_m;
}

// Every set partition of {0..n-1} as a restricted growth string.
template <class F>
void for_each_partition(int n, F&& visit) {
    std::vector<int> a(static_cast<std::size_t>(n), 0), hi(static_cast<std::size_t>(n), 0);
    for (;;) {
        visit(a);
        int i = n - 1;
        while (i > 0 && a[static_cast<std::size_t>(i)] == hi[static_cast<std::size_t>(i)] + 1) --i;
        if (i <= 0) return;
        ++a[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) {
            a[static_cast<std::size_t>(j)] = 0;
            hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j - 1)], a[static_cast<std::size_t>(j - 1)]);
        }
    }
}

inline double best_modularity(const InteractionGraph& g) {
    double best = -1.0;
    for_each_partition(static_cast<int>(g.node_count()),
                       [&](const std::vector<int>& c) { best = std::max(best, modularity_oracle(g, c)); });
    return best;
}

// Sv(S) from the dense matrix.
inline double shield_value_oracle(const InteractionGraph& g, double lambda, const std::vector<double>& u,
                                  const std::vector<int>& subset) {
    const Eigen::MatrixXd a = adjacency(g);
    double v = 0.0;
    for (int i : subset) v += 2.0 * lambda * u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    for (int i : subset)
        for (int j : subset) v -= a(i, j) * u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)];
    return v;
}

// Every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k > n) return;
    for (;;) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline polarmon::corpus::TweetRecord tweet(std::string id, std::string author, std::string when,
                                           polarmon::corpus::TweetKind kind = polarmon::corpus::TweetKind::Original,
                                           std::vector<std::string> refs = {}, std::string text = "υποκλοπές",
                                           std::string lang = "el") {
    polarmon::corpus::TweetRecord t;
    t.tweet_id = std::move(id);
    t.author_id = std::move(author);
    t.timestamp = polarmon::parse_timestamp(when);
    t.kind = kind;
    t.referenced_user_ids = std::move(refs);
    t.text = std::move(text);
    t.lang = std::move(lang);
    return t;
}

}  // namespace testkit
