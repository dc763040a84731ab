#include "polarmon/graphkit/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace polarmon::graphkit {

TimeWindow TimeWindow::all() {
    // Far enough out for any archive while staying clear of overflow in offsets.
    return {Timestamp{std::chrono::seconds{std::numeric_limits<std::int32_t>::min()} * 16},
            Timestamp{std::chrono::seconds{std::numeric_limits<std::int32_t>::max()} * 16}};
}

TimeWindow TimeWindow::day(Date d, std::chrono::minutes utc_offset) { return days(d, d, utc_offset); }

TimeWindow TimeWindow::days(Date first, Date last, std::chrono::minutes utc_offset) {
    const Timestamp begin = Timestamp{first} - utc_offset;
    const Timestamp end = Timestamp{last + std::chrono::days{1}} - utc_offset - std::chrono::seconds{1};
    return {begin, end};
}

InteractionGraph InteractionGraph::from_edges(std::set<UserId> nodes,
                                              const std::vector<std::pair<UserId, UserId>>& edges,
                                              TimeWindow window) {
    for (const auto& [a, b] : edges) {
        if (a == b) continue;
        nodes.insert(a);
        nodes.insert(b);
    }
    InteractionGraph g;
    g.window_ = window;
    g.ids_.assign(nodes.begin(), nodes.end());
    if (g.ids_.size() > static_cast<std::size_t>(std::numeric_limits<NodeIndex>::max()))
        throw InvalidArgument("graph too large for 32-bit node indices");

    g.edges_.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a == b) continue;
        NodeIndex ia = *g.index_of(a);
        NodeIndex ib = *g.index_of(b);
        if (ia > ib) std::swap(ia, ib);
        g.edges_.emplace_back(ia, ib);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    const std::size_t n = g.ids_.size();
    std::vector<std::int32_t> deg(n, 0);
    for (const auto& [a, b] : g.edges_) {
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
    }
    g.row_ptr_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.row_ptr_[i + 1] = g.row_ptr_[i] + deg[i];
    g.col_.assign(static_cast<std::size_t>(g.row_ptr_[n]), 0);
    std::vector<std::int32_t> fill(g.row_ptr_.begin(), g.row_ptr_.end() - 1);
    // Edges are sorted by (a, b), so each row comes out sorted without an
    // extra pass: smaller neighbours arrive via the b-side first.
    for (const auto& [a, b] : g.edges_) g.col_[static_cast<std::size_t>(fill[static_cast<std::size_t>(b)]++)] = a;
    for (const auto& [a, b] : g.edges_) g.col_[static_cast<std::size_t>(fill[static_cast<std::size_t>(a)]++)] = b;
    return g;
}

std::optional<NodeIndex> InteractionGraph::index_of(const UserId& id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<NodeIndex>(it - ids_.begin());
}

bool InteractionGraph::has_edge(NodeIndex a, NodeIndex b) const {
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::set<std::pair<UserId, UserId>> InteractionGraph::edge_id_pairs() const {
    std::set<std::pair<UserId, UserId>> out;
    for (const auto& [a, b] : edges_) out.emplace(id(a), id(b));
    return out;
}

InteractionGraph build_graph(const std::vector<corpus::TweetRecord>& tweets, const TimeWindow& window,
                             const BuildOptions& options) {
    if (window.begin > window.end) throw InvalidArgument("empty graph window");
    std::set<UserId> nodes;
    std::vector<std::pair<UserId, UserId>> edges;
    for (const auto& t : tweets) {
        if (!window.contains(t.timestamp)) continue;
        bool interacted = false;
        for (const auto& other : t.referenced_user_ids) {
            if (other == t.author_id) continue;
            edges.emplace_back(t.author_id, other);
            interacted = true;
        }
        if (!interacted && options.include_isolated_authors) nodes.insert(t.author_id);
    }
    return InteractionGraph::from_edges(std::move(nodes), edges, window);
}

std::vector<DailyGraph> daily_graphs(const std::vector<corpus::TweetRecord>& tweets, std::chrono::minutes utc_offset,
                                     const BuildOptions& options) {
    std::map<Date, std::vector<corpus::TweetRecord>> by_day;
    for (const auto& t : tweets) by_day[date_of(t.timestamp, utc_offset)].push_back(t);
    std::vector<DailyGraph> out;
    out.reserve(by_day.size());
    for (const auto& [d, day_tweets] : by_day)
        out.push_back({d, build_graph(day_tweets, TimeWindow::day(d, utc_offset), options)});
    return out;
}

InteractionGraph remove_nodes(const InteractionGraph& g, const std::set<UserId>& victims, bool drop_isolated) {
    std::vector<std::uint8_t> gone(g.node_count(), 0);
    bool any = false;
    for (const auto& v : victims) {
        if (const auto i = g.index_of(v)) {
            gone[static_cast<std::size_t>(*i)] = 1;
            any = true;
        }
    }
    if (!any) return g;

    std::set<UserId> nodes;
    std::vector<std::pair<UserId, UserId>> edges;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (gone[i]) continue;
        const auto idx = static_cast<NodeIndex>(i);
        bool keeps_edge = false;
        for (NodeIndex j : g.neighbors(idx)) {
            if (gone[static_cast<std::size_t>(j)]) continue;
            keeps_edge = true;
            if (idx < j) edges.emplace_back(g.id(idx), g.id(j));
        }
        const bool was_isolated = g.degree(idx) == 0;
        if (keeps_edge || was_isolated || !drop_isolated) nodes.insert(g.id(idx));
    }
    return InteractionGraph::from_edges(std::move(nodes), edges, g.window());
}

}  // namespace polarmon::graphkit
