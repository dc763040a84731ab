#include "polarmon/structure/louvain.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>

namespace polarmon::structure {
namespace {

// Weighted graph used inside the level loop. Self-loop weight holds the
// internal edge weight of an aggregated community; strength counts it twice.
struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;  // sorted by neighbour, no self entries
    std::vector<double> self_loop;
    std::vector<double> strength;
    double total_weight = 0.0;  // m

    std::size_t size() const { return adj.size(); }
};

LevelGraph from_interaction_graph(const graphkit::InteractionGraph& g) {
    LevelGraph lg;
    const std::size_t n = g.node_count();
    lg.adj.resize(n);
    lg.self_loop.assign(n, 0.0);
    lg.strength.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto j : g.neighbors(static_cast<graphkit::NodeIndex>(i))) lg.adj[i].emplace_back(j, 1.0);
        lg.strength[i] = static_cast<double>(lg.adj[i].size());
    }
    lg.total_weight = static_cast<double>(g.edge_count());
    return lg;
}

// Renumbers community labels by first appearance; returns the count.
int renumber(std::vector<int>& labels) {
    std::vector<int> map(labels.size(), -1);
    int next = 0;
    for (int& c : labels) {
        if (map[static_cast<std::size_t>(c)] < 0) map[static_cast<std::size_t>(c)] = next++;
        c = map[static_cast<std::size_t>(c)];
    }
    return next;
}

// Local-moving phase. Returns true if any node changed community.
bool local_moves(const LevelGraph& lg, std::vector<int>& community, const LouvainOptions& opt) {
    const std::size_t n = lg.size();
    const double two_m = 2.0 * lg.total_weight;
    std::vector<double> tot(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) tot[static_cast<std::size_t>(community[i])] += lg.strength[i];

    std::vector<double> link(n, 0.0);
    std::vector<int> touched;
    bool moved_any = false;
    for (;;) {
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int old_c = community[i];
            const double k_i = lg.strength[i];
            touched.clear();
            for (const auto& [j, w] : lg.adj[i]) {
                const int c = community[static_cast<std::size_t>(j)];
                if (link[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
                link[static_cast<std::size_t>(c)] += w;
            }
            tot[static_cast<std::size_t>(old_c)] -= k_i;

            auto gain = [&](int c) {
                return link[static_cast<std::size_t>(c)] - opt.resolution * tot[static_cast<std::size_t>(c)] * k_i / two_m;
            };
            int best_c = old_c;
            double best_gain = gain(old_c);
            for (int c : touched) {
                const double gc = gain(c);
                if (gc > best_gain + opt.min_gain) {
                    best_gain = gc;
                    best_c = c;
                }
            }
            tot[static_cast<std::size_t>(best_c)] += k_i;
            community[i] = best_c;
            if (best_c != old_c) moved = true;
            for (int c : touched) link[static_cast<std::size_t>(c)] = 0.0;
            link[static_cast<std::size_t>(old_c)] = 0.0;
        }
        if (!moved) break;
        moved_any = true;
    }
    return moved_any;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& community, int count) {
    LevelGraph out;
    const auto c = static_cast<std::size_t>(count);
    out.self_loop.assign(c, 0.0);
    out.strength.assign(c, 0.0);
    out.total_weight = lg.total_weight;
    std::vector<std::map<int, double>> acc(c);
    for (std::size_t i = 0; i < lg.size(); ++i) {
        const auto ci = static_cast<std::size_t>(community[i]);
        out.self_loop[ci] += lg.self_loop[i];
        out.strength[ci] += lg.strength[i];
        for (const auto& [j, w] : lg.adj[i]) {
            const int cj = community[static_cast<std::size_t>(j)];
            if (static_cast<std::size_t>(cj) == ci) {
                // Each internal edge is seen from both ends.
                out.self_loop[ci] += 0.5 * w;
            } else {
                acc[ci][cj] += w;
            }
        }
    }
    out.adj.resize(c);
    for (std::size_t i = 0; i < c; ++i)
        for (const auto& [j, w] : acc[i]) out.adj[i].emplace_back(j, w);
    return out;
}

}  // namespace

double modularity(const graphkit::InteractionGraph& g, std::span<const int> assignment) {
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    const int c = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<double> internal(static_cast<std::size_t>(c), 0.0), degree(static_cast<std::size_t>(c), 0.0);
    for (const auto& [a, b] : g.edges())
        if (assignment[static_cast<std::size_t>(a)] == assignment[static_cast<std::size_t>(b)])
            internal[static_cast<std::size_t>(assignment[static_cast<std::size_t>(a)])] += 1.0;
    for (std::size_t i = 0; i < g.node_count(); ++i)
        degree[static_cast<std::size_t>(assignment[i])] += g.degree(static_cast<graphkit::NodeIndex>(i));
    double q = 0.0;
    for (std::size_t k = 0; k < internal.size(); ++k) {
        const double frac = degree[k] / (2.0 * m);
        q += internal[k] / m - frac * frac;
    }
    return q;
}

CommunityPartition louvain(const graphkit::InteractionGraph& g, const LouvainOptions& options) {
    const std::size_t n = g.node_count();
    if (n == 0) throw InvalidArgument("louvain on an empty graph");
    CommunityPartition p;
    p.assignment.resize(n);
    std::iota(p.assignment.begin(), p.assignment.end(), 0);
    if (g.edge_count() == 0) {
        p.community_count = static_cast<int>(n);
        p.modularity = 0.0;
        return p;
    }

    LevelGraph lg = from_interaction_graph(g);
    for (;;) {
        std::vector<int> community(lg.size());
        std::iota(community.begin(), community.end(), 0);
        if (!local_moves(lg, community, options)) break;
        const int count = renumber(community);
        for (int& c : p.assignment) c = community[static_cast<std::size_t>(c)];
        ++p.levels;
        if (static_cast<std::size_t>(count) == lg.size()) break;
        lg = aggregate(lg, community, count);
    }
    p.community_count = renumber(p.assignment);
    p.modularity = modularity(g, p.assignment);
    return p;
}

std::vector<CommunityProfile> decompose_communities(CommunityPartition& partition, const graphkit::InteractionGraph& g,
                                                   const stance::StanceMap& stances, const DecomposeOptions& options) {
    auto& prof = partition.per_community;
    prof.assign(static_cast<std::size_t>(partition.community_count), CommunityProfile{});
    for (std::size_t c = 0; c < prof.size(); ++c) prof[c].community_id = static_cast<int>(c);
    for (std::size_t i = 0; i < partition.assignment.size(); ++i) {
        auto& p = prof[static_cast<std::size_t>(partition.assignment[i])];
        ++p.size;
        switch (stance::stance_of(stances, g.node_ids()[i])) {
            case stance::Stance::Left: ++p.n_left; break;
            case stance::Stance::Right: ++p.n_right; break;
            case stance::Stance::Center: ++p.n_center; break;
            case stance::Stance::Neutral: ++p.n_neutral; break;
        }
    }
    for (auto& p : prof) {
        const double sides = static_cast<double>(p.n_left + p.n_right);
        const double diff = static_cast<double>(p.n_left) - static_cast<double>(p.n_right);
        p.lean = sides > 0.0 ? (options.left_positive ? diff : -diff) / sides : 0.0;
    }
    std::vector<CommunityProfile> top = prof;
    std::stable_sort(top.begin(), top.end(), [](const CommunityProfile& a, const CommunityProfile& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.community_id < b.community_id;
    });
    if (top.size() > options.top_n) top.resize(options.top_n);
    return top;
}

void write_communities_csv(std::ostream& out, const std::vector<CommunityProfile>& profiles) {
    out << "community_id,size,n_left,n_right,n_center,n_neutral,lean\n";
    for (const auto& p : profiles)
        out << p.community_id << ',' << p.size << ',' << p.n_left << ',' << p.n_right << ',' << p.n_center << ','
            << p.n_neutral << ',' << format_double(p.lean) << '\n';
}

}  // namespace polarmon::structure
