#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polarmon/common.hpp"
#include "polarmon/corpus/tweet.hpp"
#include "polarmon/simd/kernels.hpp"

namespace polarmon::graphkit {

using NodeIndex = std::int32_t;

/// Closed interval of instants, second precision.
struct TimeWindow {
    Timestamp begin{};
    Timestamp end{};

    bool contains(Timestamp t) const { return begin <= t && t <= end; }
    bool operator==(const TimeWindow&) const = default;

    static TimeWindow all();
    /// One calendar day in the given fixed UTC offset.
    static TimeWindow day(Date d, std::chrono::minutes utc_offset = std::chrono::minutes{0});
    /// From the start of `first` to the end of `last`, both inclusive.
    static TimeWindow days(Date first, Date last, std::chrono::minutes utc_offset = std::chrono::minutes{0});
};

/// Undirected, unweighted, simple user graph.
///
/// Nodes are indexed 0..n-1 in ascending user-id order; edges are stored once
/// as (a, b) with a < b, sorted, and mirrored into a CSR adjacency with sorted
/// neighbour lists. Immutable after construction.
class InteractionGraph {
public:
    InteractionGraph() = default;

    /// Builds from arbitrary ids and id pairs. Endpoints of edges are added to
    /// the node set; self-loops and duplicates are dropped.
    static InteractionGraph from_edges(std::set<UserId> nodes,
                                       const std::vector<std::pair<UserId, UserId>>& edges,
                                       TimeWindow window = TimeWindow::all());

    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return ids_.empty(); }

    const TimeWindow& window() const { return window_; }
    const std::vector<UserId>& node_ids() const { return ids_; }
    const UserId& id(NodeIndex i) const { return ids_[static_cast<std::size_t>(i)]; }
    std::optional<NodeIndex> index_of(const UserId& id) const;
    bool contains(const UserId& id) const { return index_of(id).has_value(); }

    const std::vector<std::pair<NodeIndex, NodeIndex>>& edges() const { return edges_; }
    bool has_edge(NodeIndex a, NodeIndex b) const;

    NodeIndex degree(NodeIndex i) const { return row_ptr_[i + 1] - row_ptr_[i]; }
    std::span<const NodeIndex> neighbors(NodeIndex i) const {
        return {col_.data() + row_ptr_[i], static_cast<std::size_t>(degree(i))};
    }
    simd::CsrView csr() const { return {row_ptr_, col_}; }

    /// Edge set as sorted id pairs (first < second).
    std::set<std::pair<UserId, UserId>> edge_id_pairs() const;

    bool operator==(const InteractionGraph& o) const { return ids_ == o.ids_ && edges_ == o.edges_; }

private:
    TimeWindow window_ = TimeWindow::all();
    std::vector<UserId> ids_;
    std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
    std::vector<std::int32_t> row_ptr_{0};
    std::vector<NodeIndex> col_;
};

struct BuildOptions {
    // Keep authors whose posts reference nobody else as isolated nodes.
    bool include_isolated_authors = true;
};

/// Author u and each referenced user u' != u in a post inside `window`
/// become nodes joined by one undirected edge, however many times they
/// interact.
InteractionGraph build_graph(const std::vector<corpus::TweetRecord>& tweets, const TimeWindow& window,
                             const BuildOptions& options = {});

struct DailyGraph {
    Date date;
    InteractionGraph graph;
};

/// One graph per calendar date that has at least one post, ascending.
std::vector<DailyGraph> daily_graphs(const std::vector<corpus::TweetRecord>& tweets,
                                     std::chrono::minutes utc_offset = std::chrono::minutes{0},
                                     const BuildOptions& options = {});

/// Induced subgraph without `victims`. With `drop_isolated`, nodes whose
/// degree fell to zero because of the removal are dropped too; nodes that
/// were already isolated stay.
InteractionGraph remove_nodes(const InteractionGraph& g, const std::set<UserId>& victims, bool drop_isolated);

}  // namespace polarmon::graphkit
