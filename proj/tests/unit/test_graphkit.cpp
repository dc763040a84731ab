#include <doctest.h>

#include <sstream>

#include "polarmon/graphkit/export.hpp"
#include "polarmon/graphkit/graph.hpp"
#include "tempdir.hpp"
#include "testkit.hpp"

using namespace polarmon;
using namespace polarmon::graphkit;
using corpus::TweetKind;
using testkit::tweet;

namespace {
using Pairs = std::set<std::pair<UserId, UserId>>;
}

TEST_CASE("interactions collapse to single undirected edges") {
    SUBCASE("retweet then mention") {
        const auto g = build_graph({tweet("1", "A", "2022-08-05T10:00:00Z", TweetKind::Retweet, {"B"}),
                                    tweet("2", "B", "2022-08-05T11:00:00Z", TweetKind::Original, {"A"})},
                                   TimeWindow::all());
        CHECK(g.node_ids() == std::vector<UserId>{"A", "B"});
        CHECK(g.edge_id_pairs() == Pairs{{"A", "B"}});
    }
    SUBCASE("repeated interactions") {
        std::vector<corpus::TweetRecord> ts;
        for (int i = 0; i < 3; ++i) ts.push_back(tweet(std::to_string(i), "A", "2022-08-05T10:00:00Z", TweetKind::Retweet, {"B"}));
        ts.push_back(tweet("q", "A", "2022-08-05T10:00:00Z", TweetKind::Quote, {"B"}));
        CHECK(build_graph(ts, TimeWindow::all()).edge_count() == 1);
    }
    SUBCASE("lone original is an isolated node") {
        const auto g = build_graph({tweet("1", "A", "2022-08-05T10:00:00Z")}, TimeWindow::all());
        CHECK(g.node_count() == 1);
        CHECK(g.edge_count() == 0);
        CHECK(build_graph({tweet("1", "A", "2022-08-05T10:00:00Z")}, TimeWindow::all(), {false}).empty());
    }
    SUBCASE("self reply") {
        const auto g = build_graph({tweet("1", "A", "2022-08-05T10:00:00Z", TweetKind::Reply, {"A"})}, TimeWindow::all());
        CHECK(g.node_ids() == std::vector<UserId>{"A"});
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("mentions beyond the first reference also connect") {
        const auto g = build_graph({tweet("1", "A", "2022-08-05T10:00:00Z", TweetKind::Reply, {"B", "C", "A", "B"})},
                                   TimeWindow::all());
        CHECK(g.edge_id_pairs() == Pairs{{"A", "B"}, {"A", "C"}});
    }
}

TEST_CASE("graph structure invariants") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = testkit::gnp(40, 0.1, rng);
        std::size_t deg_sum = 0;
        for (NodeIndex i = 0; i < static_cast<NodeIndex>(g.node_count()); ++i) {
            deg_sum += static_cast<std::size_t>(g.degree(i));
            const auto nb = g.neighbors(i);
            CHECK(std::is_sorted(nb.begin(), nb.end()));
            for (NodeIndex j : nb) {
                CHECK(j != i);
                CHECK(g.has_edge(j, i));
            }
        }
        CHECK(deg_sum == 2 * g.edge_count());
        CHECK(std::is_sorted(g.node_ids().begin(), g.node_ids().end()));
        for (auto [a, b] : g.edges()) CHECK(a < b);
    }
}

TEST_CASE("windows and daily graphs") {
    const std::vector<corpus::TweetRecord> ts{
        tweet("1", "A", "2022-08-05T23:30:00Z", TweetKind::Retweet, {"B"}),
        tweet("2", "C", "2022-08-06T00:10:00Z", TweetKind::Retweet, {"D"}),
        tweet("3", "E", "2022-08-08T09:00:00Z"),
    };
    const auto days = daily_graphs(ts);
    REQUIRE(days.size() == 3);
    CHECK(days[0].date == parse_date("2022-08-05"));
    CHECK(days[0].graph.edge_id_pairs() == Pairs{{"A", "B"}});
    CHECK(days[1].graph.edge_id_pairs() == Pairs{{"C", "D"}});
    CHECK(days[2].graph.node_ids() == std::vector<UserId>{"E"});

    // at UTC+2 the first two posts fall on the same local day
    const auto shifted = daily_graphs(ts, std::chrono::minutes{120});
    REQUIRE(shifted.size() == 2);
    CHECK(shifted[0].date == parse_date("2022-08-06"));
    CHECK(shifted[0].graph.edge_count() == 2);

    const auto w = TimeWindow::day(parse_date("2022-08-05"));
    CHECK(w.contains(parse_timestamp("2022-08-05T00:00:00Z")));
    CHECK(w.contains(parse_timestamp("2022-08-05T23:59:59Z")));
    CHECK_FALSE(w.contains(parse_timestamp("2022-08-06T00:00:00Z")));
    CHECK(build_graph(ts, w).edge_id_pairs() == Pairs{{"A", "B"}});
}

TEST_CASE("remove_nodes drops stranded nodes only on request") {
    // star centred on h plus an already isolated node z
    const auto g = InteractionGraph::from_edges({"z"}, {{"h", "a"}, {"h", "b"}, {"a", "b"}, {"h", "c"}});
    const auto kept = remove_nodes(g, {"h"}, false);
    CHECK(kept.node_ids() == std::vector<UserId>{"a", "b", "c", "z"});
    CHECK(kept.edge_id_pairs() == Pairs{{"a", "b"}});
    const auto dropped = remove_nodes(g, {"h"}, true);
    CHECK(dropped.node_ids() == std::vector<UserId>{"a", "b", "z"});
    CHECK(remove_nodes(g, {"nobody"}, true) == g);
    CHECK(remove_nodes(g, {"h", "a", "b", "c", "z"}, true).empty());
}

TEST_CASE("GraphML and edge list export") {
    const auto g = InteractionGraph::from_edges({"solo"}, {{"b", "a"}, {"a", "c & d"}});
    NodeLabels labels;
    labels.stance["a"] = "Left";
    labels.category["b"] = "Political";
    std::stringstream xml;
    write_graphml(xml, g, labels);
    const auto back = read_graphml(xml);
    CHECK(back.graph == g);
    CHECK(back.labels.stance.at("a") == "Left");
    CHECK(back.labels.stance.at("b") == "Neutral");
    CHECK(back.labels.category.at("b") == "Political");
    CHECK(back.labels.category.at("solo") == "Unannotated");

    std::ostringstream edges;
    write_edge_list(edges, g);
    CHECK(edges.str() == "a b\na c & d\n");

    testkit::TempDir dir;
    export_graphml(g, labels, dir.path() / "g.graphml");
    CHECK(import_graphml(dir.path() / "g.graphml").graph == g);
}
