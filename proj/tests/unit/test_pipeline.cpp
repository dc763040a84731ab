#include <doctest.h>

#include <json.hpp>
#include <map>
#include <random>
#include <sstream>

#include "polarmon/corpus/text.hpp"
#include "polarmon/pipeline/experiments.hpp"
#include "polarmon/pipeline/report.hpp"
#include "polarmon/pipeline/run.hpp"
#include "polarmon/pipeline/stats.hpp"
#include "tempdir.hpp"
#include "testkit.hpp"

using namespace polarmon;
using namespace polarmon::pipeline;
using corpus::TweetKind;
using stance::Stance;
using testkit::tweet;

namespace {

const std::filesystem::path kFixture = POLARMON_FIXTURE_DIR;

stance::StanceMap labels(std::initializer_list<std::pair<const char*, Stance>> items) {
    stance::StanceMap m;
    for (auto [id, s] : items) m[id] = {id, s};
    return m;
}

corpus::Annotations one_media(const UserId& id) {
    corpus::Annotations a;
    a.add({id, corpus::AccountCategory::MediaJournalist, std::nullopt});
    return a;
}

// Two triangles of opposite opinion joined only through node "m".
graphkit::InteractionGraph bridged_cliques() {
    return graphkit::InteractionGraph::from_edges(
        {}, {{"l1", "l2"}, {"l2", "l3"}, {"l1", "l3"}, {"r1", "r2"}, {"r2", "r3"}, {"r1", "r3"}, {"m", "l1"}, {"m", "r1"}});
}

stance::StanceMap bridged_labels() {
    return labels({{"l1", Stance::Left}, {"l2", Stance::Left}, {"l3", Stance::Left}, {"r1", Stance::Right},
                   {"r2", Stance::Right}, {"r3", Stance::Right}});
}

}  // namespace

TEST_CASE("statistics match a hand tally") {
    std::vector<corpus::TweetRecord> ts{
        tweet("1", "a", "2022-08-05T08:00:00Z", TweetKind::Original, {}, "Οι υποκλοπές συνεχίζονται"),
        tweet("2", "b", "2022-08-05T09:00:00Z", TweetKind::Retweet, {"a"}, "RT Οι υποκλοπές συνεχίζονται"),
        tweet("3", "a", "2022-08-05T10:00:00Z", TweetKind::Reply, {"b", "c"}, "@b οι ΥΠΟΚΛΟΠΕΣ #predator"),
        tweet("4", "c", "2022-08-06T10:00:00Z", TweetKind::Quote, {"a"}, "δείτε https://x.example/1"),
    };
    ts[0].hashtags = {};
    ts[2].hashtags = {"predator"};
    ts[3].urls = {"https://x.example/1"};
    ts[0].like_count = 5;
    ts[2].like_count = 5;
    ts[3].like_count = 9;
    ts[1].like_count = 100;  // a retweet: excluded from per-post rankings

    const DailyStats all = aggregate_stats(ts);
    CHECK(all.n_posts == 4);
    CHECK(all.n_tweets + all.n_retweets + all.n_quotes + all.n_replies == all.n_posts);
    CHECK(all.n_users == 3);
    CHECK(all.n_hashtags == 1);
    CHECK(all.n_urls == 1);
    CHECK(all.most_liked == std::vector<RankedItem>{{"4", 9}, {"1", 5}, {"3", 5}});
    CHECK(all.most_active == std::vector<RankedItem>{{"a", 2}, {"b", 1}, {"c", 1}});
    CHECK(all.most_mentioned == std::vector<RankedItem>{{"a", 2}, {"b", 1}, {"c", 1}});
    // "οι" and "υποκλοπες" both appear twice; ties go to the smaller key
    REQUIRE(all.top_words.size() >= 3);
    CHECK(all.top_words[0] == RankedItem{"οι", 2});
    CHECK(all.top_words[1] == RankedItem{corpus::fold_for_match("υποκλοπες"), 2});
    CHECK(all.top_phrases[0] == RankedItem{"οι " + corpus::fold_for_match("υποκλοπες"), 2});

    const auto days = compute_stats(ts);
    REQUIRE(days.size() == 2);
    CHECK(days[0].n_posts == 3);
    CHECK(days[1].n_posts == 1);

    std::ostringstream csv;
    write_stats_csv(csv, days, &all);
    CHECK(csv.str() ==
          "date,n_posts,n_tweets,n_retweets,n_quotes,n_replies,n_users,n_hashtags,n_urls\n"
          "2022-08-05,3,1,1,0,1,2,1,0\n2022-08-06,1,0,0,1,0,1,0,1\nALL,4,1,1,1,1,3,1,1\n");
}

TEST_CASE("three tweets by two authors") {
    const std::vector<corpus::TweetRecord> ts{tweet("1", "a", "2022-08-05T08:00:00Z"),
                                              tweet("2", "a", "2022-08-05T09:00:00Z"),
                                              tweet("3", "b", "2022-08-05T09:00:00Z")};
    CHECK(aggregate_stats(ts).n_users == 2);
}

TEST_CASE("content words skip urls, mentions and hashtags") {
    const auto w = content_words("Η @κυβέρνηση και οι #υποκλοπές https://t.co/x ΤΕΛΟΣ", {"και"});
    // gaps (empty strings) sit where pieces were removed
    CHECK(w == std::vector<std::string>{corpus::fold_for_match("η"), "", "οι", "", "", corpus::fold_for_match("τελος")});
}

TEST_CASE("stance shares round half even and sum to 100%") {
    CHECK(shares_permille({1, 1, 1, 0}) == std::array<int, 4>{334, 333, 333, 0});
    CHECK(shares_permille({1, 0, 0, 0}) == std::array<int, 4>{1000, 0, 0, 0});
    CHECK(shares_permille({0, 0, 0, 0}) == std::array<int, 4>{0, 0, 0, 0});
    // 1/8 = 12.5% exactly: 125 permille, no rounding needed; 1/16 = 62.5 -> 62 (even)
    CHECK(shares_permille({1, 15, 0, 0}) == std::array<int, 4>{62, 938, 0, 0});
    std::mt19937_64 rng(6);
    for (int i = 0; i < 200; ++i) {
        std::array<std::size_t, 4> c{rng() % 50, rng() % 50, rng() % 50, rng() % 50};
        const auto p = shares_permille(c);
        if (c[0] + c[1] + c[2] + c[3] > 0) CHECK(p[0] + p[1] + p[2] + p[3] == 1000);
    }

    const auto m = labels({{"L", Stance::Left}, {"R", Stance::Right}});
    std::vector<corpus::TweetRecord> ts;
    for (int i = 0; i < 3; ++i) ts.push_back(tweet(std::to_string(i), "L", "2022-08-05T08:00:00Z"));
    ts.push_back(tweet("9", "R", "2022-08-05T08:00:00Z"));
    const auto s = stance_shares(ts, m);
    CHECK(s.tweet_share_permille[0] == 750);
    CHECK(s.user_share_permille[0] == 500);
    ts.pop_back();
    CHECK(stance_shares(ts, m).user_share_permille[0] == 1000);
}

TEST_CASE("pi series keeps one row per day") {
    const std::vector<corpus::TweetRecord> ts{
        tweet("1", "a", "2022-08-05T08:00:00Z", TweetKind::Retweet, {"b"}),
        tweet("2", "c", "2022-08-06T08:00:00Z", TweetKind::Retweet, {"d"}),
    };
    const auto days = graphkit::daily_graphs(ts);
    const auto rows = pi_series(days, labels({{"a", Stance::Left}, {"b", Stance::Right}}), {}, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].result->pi == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(rows[1].result->pi == 0.0);
    std::ostringstream out;
    write_pi_series_csv(out, rows);
    CHECK(out.str().rfind("date,n,m,pi,method,iterations,residual\n2022-08-05,2,1,", 0) == 0);
}

TEST_CASE("ablation examples") {
    const auto g = bridged_cliques();
    const auto m = bridged_labels();
    SUBCASE("removing the only bridge separates the camps") {
        const auto r = ablation(g, m, one_media("m"), {});
        REQUIRE(r.pi_full.has_value());
        CHECK(*r.pi_full < 1.0);
        CHECK(std::fabs(*r.without(RemovedGroup::MediaJournalist).pi - 1.0) <= 1e-12);
        // nothing Political or influential to remove
        CHECK(*r.without(RemovedGroup::Political).pi == *r.pi_full);
        CHECK(*r.without(RemovedGroup::Influencers).pi == *r.pi_full);
    }
    SUBCASE("removing every node is reported, not thrown") {
        std::set<UserId> everyone(g.node_ids().begin(), g.node_ids().end());
        const auto r = ablation(g, m, {}, everyone);
        CHECK_FALSE(r.without(RemovedGroup::Influencers).pi.has_value());
        CHECK_FALSE(r.without(RemovedGroup::Influencers).error.empty());
    }
    std::ostringstream out;
    write_ablation_csv(out, {ablation(g, m, one_media("m"), {})});
    CHECK(out.str().rfind("label,drop_isolated,pi_full,pi_without_political,pi_without_media,pi_without_influencers\n", 0) == 0);
}

TEST_CASE("threshold sweep at 0 equals the default ablation") {
    corpus::Annotations a;
    a.add({"pl", corpus::AccountCategory::Political, corpus::Side::Left});
    a.add({"pr", corpus::AccountCategory::Political, corpus::Side::Right});
    a.add({"m", corpus::AccountCategory::MediaJournalist, std::nullopt});
    std::vector<corpus::FollowRecord> f{{"l1", "pl"}, {"l2", "pl"}, {"l2", "pr"}, {"l3", "pl"},
                                        {"r1", "pr"}, {"r2", "pr"}, {"r3", "pr"}, {"r3", "pl"}};
    const auto g = bridged_cliques();
    const std::set<UserId> infl{"m"};
    const auto sweep = threshold_sweep(g, f, a, infl, {0.0, 0.5, 0.7});
    const auto base = ablation(g, stance::stance_map(f, a, 0.0, g.node_ids()), a, infl);
    REQUIRE(sweep.rows.size() == 3);
    CHECK(sweep.rows[0].pis.pi_full == base.pi_full);
    for (std::size_t k = 0; k < 3; ++k) CHECK(sweep.rows[0].pis.pi_without[k].pi == base.pi_without[k].pi);
    for (std::size_t i = 1; i < sweep.rows.size(); ++i)
        CHECK(sweep.rows[i].n_left_users + sweep.rows[i].n_right_users <=
              sweep.rows[i - 1].n_left_users + sweep.rows[i - 1].n_right_users);

    // all-Neutral corpus
    const auto flat = threshold_sweep(g, {}, a, infl);
    for (const auto& r : flat.rows) CHECK(*r.pis.pi_full == 0.0);
}

TEST_CASE("parallel_for visits each index once and surfaces errors") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw InvalidArgument("x"); }), InvalidArgument);
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config(R"({"tweets": "t.jsonl", "rules": "/abs/r.json", "from": "2022-08-01",)"
                                  R"( "solver": "fixed_point", "thresholds": [0, 0.9], "k": 3, "lean_left_positive": false})",
                                  "/data/run");
    CHECK(cfg.tweets == std::filesystem::path("/data/run/t.jsonl"));
    CHECK(cfg.rules == std::filesystem::path("/abs/r.json"));
    CHECK(cfg.from == parse_date("2022-08-01"));
    CHECK(cfg.solver == polarization::SolverMethod::FixedPoint);
    CHECK(cfg.k == 3);
    CHECK_FALSE(cfg.lean_left_positive);
    const auto echo = nlohmann::json::parse(config_to_json(cfg));
    CHECK(echo["tweets"] == "t.jsonl");
    CHECK(echo["thresholds"].size() == 2);
    CHECK_THROWS_AS(parse_config(R"({"tweets": "t", "bogus": 1})", ""), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"rules": "r"})", ""), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"tweets": "t", "threshold": 2})", ""), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"tweets": "t", "from": "2022-09-01", "to": "2022-08-01"})", ""), InvalidArgument);
}

TEST_CASE("svg chart is well formed and breaks at gaps") {
    const auto svg = svg_line_chart({"a", "b", "c"}, {{"s", "#000", {1.0, std::nullopt, 2.0}}}, "y");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    // two separate moves, no line across the gap
    std::size_t moves = 0;
    for (std::size_t p = svg.find(" M"); p != std::string::npos; p = svg.find(" M", p + 1)) ++moves;
    CHECK(moves == 2);
}

TEST_CASE("run_all on the fixture: complete, deterministic bundle") {
    testkit::TempDir d1, d2;
    auto cfg = load_config(kFixture / "config.json");
    cfg.out_dir = d1.path();
    const auto first = run_all(cfg);
    cfg.out_dir = d2.path();
    cfg.workers = 3;
    const auto second = run_all(cfg);
    CHECK(first.files == second.files);
    for (const char* name : {"stats_daily.csv", "pi_series.csv", "ablation.csv", "sweep.csv", "stance.csv",
                             "influencers.csv", "communities.csv", "graph_2022-08-01_2022-08-06.graphml",
                             "summary.html", "run_manifest.json"}) {
        CAPTURE(name);
        REQUIRE(std::filesystem::exists(d1.path() / name));
    }
    for (const auto& f : first.files) {
        CAPTURE(f);
        CHECK(testkit::slurp(d1.path() / f) == testkit::slurp(d2.path() / f));
    }
    // planted two-block structure: two big communities, then crumbs
    std::istringstream comm(testkit::slurp(d1.path() / "communities.csv"));
    std::string line;
    std::getline(comm, line);
    std::vector<std::size_t> sizes;
    while (std::getline(comm, line)) sizes.push_back(std::stoul(line.substr(line.find(',') + 1)));
    REQUIRE(sizes.size() >= 2);
    CHECK(sizes[0] >= 30);
    CHECK(sizes[1] >= 30);
    if (sizes.size() > 2) CHECK(sizes[2] * 5 < sizes[1]);

    const auto manifest = nlohmann::json::parse(testkit::slurp(d1.path() / "run_manifest.json"));
    CHECK(manifest["inputs"]["tweets"]["sha256"] == sha256_file(kFixture / "tweets.jsonl"));
    CHECK(manifest["config"]["tweets"] == "tweets.jsonl");
}

TEST_CASE("run_all on an empty corpus writes empty but valid files") {
    testkit::TempDir dir;
    dir.write("tweets.jsonl", "");
    dir.write("config.json", R"({"tweets": "tweets.jsonl", "from": "2022-08-01", "to": "2022-08-02"})");
    auto cfg = load_config(dir.path() / "config.json");
    cfg.out_dir = dir.path() / "out";
    const auto summary = run_all(cfg);
    CHECK_FALSE(summary.warnings.empty());
    CHECK(testkit::slurp(cfg.out_dir / "pi_series.csv") == "date,n,m,pi,method,iterations,residual\n");
    CHECK(testkit::slurp(cfg.out_dir / "influencers.csv") == "rank,user_id,marginal_score\n");
    CHECK(std::filesystem::exists(cfg.out_dir / "summary.html"));
    CHECK(nlohmann::json::parse(testkit::slurp(cfg.out_dir / "run_manifest.json")).contains("files"));
}

TEST_CASE("stage failures carry the stage name") {
    testkit::TempDir dir;
    dir.write("config.json", R"({"tweets": "missing.jsonl"})");
    auto cfg = load_config(dir.path() / "config.json");
    cfg.out_dir = dir.path() / "out";
    CHECK_THROWS_WITH_AS(run_all(cfg), doctest::Contains("[load] "), StageError);

    dir.write("t.jsonl", serialize_tweet(tweet("1", "a", "2022-08-05T08:00:00Z")) + "\n");
    dir.write("bad.csv", "follower_id,followed_political_id\nu1,nobody\n");
    dir.write("c2.json", R"({"tweets": "t.jsonl", "follows": "bad.csv"})");
    cfg = load_config(dir.path() / "c2.json");
    cfg.out_dir = dir.path() / "out";
    CHECK_THROWS_AS(run_all(cfg), StageError);
}
