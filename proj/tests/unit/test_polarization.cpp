#include <doctest.h>

#include <random>

#include "polarmon/polarization/fj.hpp"
#include "testkit.hpp"

using namespace polarmon;
using namespace polarmon::polarization;

namespace {

SolverOptions fixed_point() {
    SolverOptions o;
    o.method = SolverMethod::FixedPoint;
    return o;
}

double inf_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("two nodes joined by one edge") {
    // (I + L) = [[2, -1], [-1, 2]], s = (1, -1): z = (1/3, -1/3)
    const auto g = testkit::graph_from(2, {{0, 1}});
    const std::vector<double> s{1.0, -1.0};
    const auto eq = fj_equilibrium(g, s);
    CHECK(eq.z[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(eq.z[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(std::fabs(polarization_index(eq.z) - 1.0 / 9.0) <= 1e-12);
    // the iteration stops once the residual is below tol; its error is bounded by it
    const auto it = fj_equilibrium(g, s, fixed_point());
    CHECK(std::fabs(it.z[0] - 1.0 / 3.0) <= 1e-10);
    CHECK(std::fabs(it.z[1] + 1.0 / 3.0) <= 1e-10);
}

TEST_CASE("direct and fixed point match a dense LU solve") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 80)(rng);
        const auto g = testkit::gnp(n, std::uniform_real_distribution<double>(0.02, 0.4)(rng), rng);
        const auto s = testkit::ternary_opinions(g.node_count(), rng);
        const auto oracle = testkit::dense_fj(g, s);
        const auto direct = fj_equilibrium(g, s);
        const auto iter = fj_equilibrium(g, s, fixed_point());
        CHECK(inf_dist(direct.z, oracle) <= 1e-12);
        CHECK(inf_dist(iter.z, oracle) <= 1e-9);
        CHECK(direct.solver.residual <= 1e-10);
        CHECK(iter.solver.residual <= 1e-10);
        CHECK(iter.solver.method == SolverMethod::FixedPoint);
    }
}

TEST_CASE("index bounds and degenerate inputs") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = testkit::gnp(30, 0.15, rng);
        const auto s = testkit::ternary_opinions(30, rng);
        const double pi = compute_pi(g, s).pi;
        CHECK(pi >= 0.0);
        CHECK(pi <= 1.0);
    }
    const auto g = testkit::gnp(10, 0.5, rng);
    CHECK(compute_pi(g, std::vector<double>(10, 0.0)).pi == 0.0);
    CHECK_THROWS_AS(polarization_index(std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(compute_pi(graphkit::InteractionGraph{}, std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(fj_equilibrium(g, std::vector<double>(3, 0.0)), InvalidArgument);
    CHECK_THROWS_AS(fj_equilibrium(g, std::vector<double>(10, 2.0)), InvalidArgument);
}

TEST_CASE("opposite uniform components reach the maximum") {
    // two disjoint triangles, one all Right, one all Left
    const auto g = testkit::graph_from(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const std::vector<double> s{1, 1, 1, -1, -1, -1};
    CHECK(std::fabs(compute_pi(g, s).pi - 1.0) <= 1e-12);
}

TEST_CASE("isolated nodes keep their innate opinion and can be excluded") {
    // edge 0-1 with opposite opinions plus isolated Right node 2
    const auto g = testkit::graph_from(3, {{0, 1}});
    const std::vector<double> s{1.0, -1.0, 1.0};
    const auto with = compute_pi(g, s);
    CHECK(with.z[2] == 1.0);
    CHECK(with.nodes == 3);
    CHECK(with.pi == doctest::Approx((2.0 / 9.0 + 1.0) / 3.0).epsilon(1e-14));
    PiOptions o;
    o.include_isolated = false;
    const auto without = compute_pi(g, s, o);
    CHECK(without.nodes == 2);
    CHECK(without.pi == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("stance map drives the opinion vector") {
    const auto g = graphkit::InteractionGraph::from_edges({}, {{"a", "b"}});
    stance::StanceMap m;
    m["a"] = {"a", stance::Stance::Right};
    m["b"] = {"b", stance::Stance::Left};
    CHECK(compute_pi(g, m).pi == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("fixed point reports non convergence at its cap") {
    std::mt19937_64 rng(4);
    const auto g = testkit::connected_gnp(50, 0.3, rng);
    auto s = testkit::ternary_opinions(50, rng);
    s[0] = 1.0;
    SolverOptions o = fixed_point();
    o.max_iter = 3;
    try {
        fj_equilibrium(g, s, o);
        FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
        CHECK(e.iterations() == 3);
        CHECK(e.residual() > o.tol);
    }
}
