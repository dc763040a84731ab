#include <doctest.h>

#include <climits>
#include <random>
#include <sstream>

#include "polarmon/stance/stance.hpp"

using namespace polarmon;
using namespace polarmon::stance;
using corpus::AccountCategory;
using corpus::Side;

namespace {

corpus::Annotations parties() {
    corpus::Annotations a;
    a.add({"L1", AccountCategory::Political, Side::Left});
    a.add({"L2", AccountCategory::Political, Side::Left});
    a.add({"L3", AccountCategory::Political, Side::Left});
    a.add({"R1", AccountCategory::Political, Side::Right});
    a.add({"R2", AccountCategory::Political, Side::Right});
    a.add({"C1", AccountCategory::Political, Side::Center});
    a.add({"M1", AccountCategory::MediaJournalist, std::nullopt});
    return a;
}

}  // namespace

TEST_CASE("classify follows the attribution rule") {
    CHECK(classify(0, 0, 0, 0.0) == Stance::Neutral);
    CHECK(classify(2, 1, 0, 0.0) == Stance::Left);
    CHECK(classify(1, 2, 0, 0.0) == Stance::Right);
    CHECK(classify(1, 1, 0, 0.0) == Stance::Center);
    CHECK(classify(0, 0, 1, 0.0) == Stance::Center);
    CHECK(classify(2, 1, 3, 0.0) == Stance::Center);
    // Center does not win a tie with the leading side
    CHECK(classify(2, 1, 2, 0.0) == Stance::Left);
    // threshold on the share of all political follows
    CHECK(classify(3, 1, 0, 0.75) == Stance::Left);
    CHECK(classify(3, 1, 0, 0.76) == Stance::Center);
    CHECK(classify(1, 0, 0, 1.0) == Stance::Left);
}

TEST_CASE("infer_stance tallies and validates") {
    const auto a = parties();
    const auto s = infer_stance("u", {"L1", "L2", "R1"}, a, 0.0);
    CHECK(s.stance == Stance::Left);
    CHECK(s.n_left == 2);
    CHECK(s.n_right == 1);
    CHECK(infer_stance("u", {"L1", "L2", "R1"}, a, 0.7).stance == Stance::Center);
    CHECK(infer_stance("u", {}, a).stance == Stance::Neutral);
    CHECK_THROWS_WITH_AS(infer_stance("u", {"M1"}, a), doctest::Contains("M1"), InvalidArgument);
    CHECK_THROWS_WITH_AS(infer_stance("u", {"ghost"}, a), doctest::Contains("ghost"), InvalidArgument);
    CHECK_THROWS_AS(infer_stance("u", {"L1"}, a, 1.5), InvalidArgument);
}

TEST_CASE("stance_map covers followers and corpus users") {
    const auto a = parties();
    const std::vector<corpus::FollowRecord> f{{"u1", "L1"}, {"u1", "L2"}, {"u2", "R1"}, {"u3", "C1"}};
    const auto m = stance_map(f, a, 0.0, {"u1", "u9"});
    CHECK(m.size() == 4);
    CHECK(stance_of(m, "u1") == Stance::Left);
    CHECK(stance_of(m, "u2") == Stance::Right);
    CHECK(stance_of(m, "u3") == Stance::Center);
    CHECK(stance_of(m, "u9") == Stance::Neutral);
    CHECK(stance_of(m, "nobody") == Stance::Neutral);

    const auto g = graphkit::InteractionGraph::from_edges({"u3", "zz"}, {{"u1", "u2"}});
    CHECK(opinion_vector(g, m) == std::vector<double>{-1.0, 1.0, 0.0, 0.0});

    std::ostringstream csv;
    write_stance_csv(csv, m);
    CHECK(csv.str().rfind("user_id,stance,n_left,n_right,n_center,threshold\nu1,Left,2,0,0,0\n", 0) == 0);
}

TEST_CASE("raising the threshold never adds labelled users") {
    const auto a = parties();
    std::mt19937_64 rng(21);
    const std::vector<UserId> pol{"L1", "L2", "L3", "R1", "R2", "C1"};
    std::vector<corpus::FollowRecord> f;
    for (int u = 0; u < 200; ++u)
        for (const auto& p : pol)
            if (rng() % 3 == 0) f.push_back({"u" + std::to_string(u), p});
    std::size_t prev = SIZE_MAX;
    for (double th : {0.0, 0.25, 0.5, 0.7, 0.9, 1.0}) {
        std::size_t labelled = 0;
        for (const auto& [_, s] : stance_map(f, a, th))
            if (s.stance == Stance::Left || s.stance == Stance::Right) ++labelled;
        CHECK(labelled <= prev);
        prev = labelled;
    }
}

TEST_CASE("stance names round trip") {
    for (auto s : {Stance::Left, Stance::Right, Stance::Center, Stance::Neutral}) CHECK(parse_stance(to_string(s)) == s);
    CHECK(opinion_value(Stance::Right) == 1.0);
    CHECK(opinion_value(Stance::Left) == -1.0);
    CHECK(opinion_value(Stance::Center) == 0.0);
}
