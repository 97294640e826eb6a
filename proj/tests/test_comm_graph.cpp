#include "itc/comm_graph.hpp"
#include "itc/construct.hpp"
#include "itc/errors.hpp"
#include "itc/mobility.hpp"
#include "itc/oracle.hpp"
#include "itc/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace itc;

namespace {

std::shared_ptr<const PointSet> pts(std::vector<Point> v) {
    return std::make_shared<const PointSet>(std::move(v));
}

std::shared_ptr<const PointSet> line(std::vector<double> xs) {
    return std::make_shared<const PointSet>(PointSet::collinear(std::move(xs)));
}

bool has_edge(const CommGraph& g, NodeId a, NodeId b) {
    return std::find(g.edges().begin(), g.edges().end(), make_edge(a, b)) != g.edges().end();
}

// All-pairs predicate evaluation, independent of the adjacency build path.
bool edge_predicate(const CommGraph& g, NodeId a, NodeId b) {
    return a != b && g.points().node_distance(a, b) <= std::min(g.radius(a), g.radius(b));
}

} // namespace

TEST_CASE("build_comm_graph matches the edge rule") {
    SUBCASE("single node has no edges") {
        const CommGraph g = build_comm_graph(line({5}), {1.0});
        CHECK(g.edges().empty());
        CHECK(max_interference(g) == 0);
    }
    SUBCASE("collinear 0,1,3 with radii 1,2,2") {
        const CommGraph g = build_comm_graph(line({0, 1, 3}), {1, 2, 2});
        CHECK(g.edges().size() == 2);
        CHECK(has_edge(g, 0, 1));
        CHECK(has_edge(g, 1, 2));
        CHECK_FALSE(has_edge(g, 0, 2)); // 3 > min(1,2)
    }
    SUBCASE("triangle within radius 5") {
        const CommGraph g =
            build_comm_graph(pts({Point{0, 0}, Point{5, 0}, Point{4, 3}}), {5, 5, 5});
        CHECK(g.edges().size() == 3); // dist(u,v) = sqrt(10) <= 5
    }
    SUBCASE("radius map must cover all nodes") {
        CHECK_THROWS_AS(build_comm_graph(line({0, 1, 3}), {1, 2}), ModelError);
    }
}

TEST_CASE("closure") {
    SUBCASE("single edge") {
        const auto p = line({0, 7});
        const CommGraph g = closure(EmbeddedGraph(p, {{0, 1}}));
        CHECK(g.edges().size() == 1);
        CHECK(g.radius(0) == 7.0);
        CHECK(g.radius(1) == 7.0);
        CHECK(is_primitive(g, {0, 1}));
    }
    SUBCASE("star gains the third edge") {
        const auto p = pts({Point{0, 0}, Point{5, 0}, Point{4, 3}});
        const CommGraph g = closure(EmbeddedGraph(p, {{0, 1}, {0, 2}}));
        CHECK(g.radius(0) == 5.0);
        CHECK(g.radius(1) == 5.0);
        CHECK(g.radius(2) == 5.0);
        CHECK(g.edges().size() == 3);
        CHECK_FALSE(is_primitive(g, {1, 2})); // sqrt(10) != 5
    }
    SUBCASE("1-D path stays a path") {
        const CommGraph g = closure(EmbeddedGraph(line({0, 1, 3}), {{0, 1}, {1, 2}}));
        CHECK(g.radius(0) == 1.0);
        CHECK(g.radius(1) == 2.0);
        CHECK(g.radius(2) == 2.0);
        CHECK(g.edges().size() == 2);
        CHECK(is_primitive(g, {0, 1}));
        CHECK(is_primitive(g, {1, 2}));
    }
    SUBCASE("isolated node is rejected") {
        CHECK_THROWS_AS(closure(EmbeddedGraph(line({0, 1, 3}), {{0, 1}})), ModelError);
    }
}

TEST_CASE("interference") {
    SUBCASE("collinear 0,1,3 radii 1,2,2") {
        const CommGraph g = build_comm_graph(line({0, 1, 3}), {1, 2, 2});
        CHECK(interference_at(g, 0) == 1);
        CHECK(interference_at(g, 1) == 2);
        CHECK(interference_at(g, 2) == 1);
        CHECK(max_interference(g) == 2);
        CHECK(mean_interference(g) == doctest::Approx(4.0 / 3.0));
    }
    SUBCASE("two joined nodes cover each other") {
        const CommGraph g = build_comm_graph(line({0, 1}), {1, 1});
        CHECK(interference_at(g, 0) == 1);
        CHECK(interference_at(g, 1) == 1);
    }
    SUBCASE("exponential chain 1,2,4,8 under MST closure") {
        const auto p = line({1, 2, 4, 8});
        const CommGraph g = closure(euclidean_mst(p));
        CHECK(g.radius(0) == 1.0);
        CHECK(g.radius(1) == 2.0);
        CHECK(g.radius(2) == 4.0);
        CHECK(g.radius(3) == 4.0);
        CHECK(interference_at(g, 0) == 2);
        CHECK(interference_at(g, 1) == 2);
        CHECK(interference_at(g, 2) == 2);
        CHECK(interference_at(g, 3) == 1);
        CHECK(max_interference(g) == 2);
        CHECK(edge_length_extremes(g) == std::pair{1.0, 4.0});
    }
    SUBCASE("unknown node") {
        const CommGraph g = build_comm_graph(line({0}), {1});
        CHECK_THROWS_AS(interference_at(g, 5), ModelError);
    }
}

TEST_CASE("bridged edges") {
    // p1=(0,0), p2=(0.5,0), q=(10,0), complete graph under radii 10
    const CommGraph g = build_comm_graph(line({0, 0.5, 10}), {10, 10, 10});
    REQUIRE(g.edges().size() == 3);
    CHECK(is_bridged(g, {0, 2}));        // detour through p2: 0.5 and 9.5 both < 10
    CHECK_FALSE(is_bridged(g, {0, 1}));  // shortest edge can never be bridged
    CHECK(in_T(g) == false);             // {p1,q} is primitive (radius 10 = dist) and bridged

    // 3-edge bridge: 0, 0.2, 9.8, 10 complete under radii 10.5
    const CommGraph h = build_comm_graph(line({0, 0.2, 9.8, 10}), {10.5, 10.5, 10.5, 10.5});
    CHECK(is_bridged(h, {0, 3})); // path 0 -> 0.2 -> 9.8 -> 10, hops 0.2, 9.6, 0.2 < 10

    CHECK_THROWS_AS(is_bridged(g, Edge{0, 0}), ModelError);
}

TEST_CASE("in_T basics") {
    const CommGraph single = closure(EmbeddedGraph(line({0, 2}), {{0, 1}}));
    CHECK(in_T(single));
    Rng rng(99);
    for (int i = 0; i < 20; ++i) {
        const auto p = std::make_shared<const PointSet>(
            place_uniform(24, Region({1.0, 1.0}), rng.next_u64()));
        CHECK(in_T(closure(euclidean_mst(p))));
    }
}

TEST_CASE("connected components") {
    SUBCASE("single node") {
        const CommGraph g = build_comm_graph(line({0}), {0});
        CHECK(connected_components(g) == std::vector<std::vector<NodeId>>{{0}});
    }
    SUBCASE("path is one component") {
        const CommGraph g = build_comm_graph(line({0, 1, 3}), {1, 2, 2});
        CHECK(g.connected());
        CHECK(connected_components(g).size() == 1);
    }
    SUBCASE("short radii split the line") {
        const CommGraph g = build_comm_graph(line({0, 1, 3}), {1, 1, 1});
        const auto parts = connected_components(g);
        REQUIRE(parts.size() == 2);
        CHECK(parts[0] == std::vector<NodeId>{0, 1});
        CHECK(parts[1] == std::vector<NodeId>{2});
    }
}

TEST_CASE("edge length extremes") {
    const CommGraph single = closure(EmbeddedGraph(line({0, 5}), {{0, 1}}));
    CHECK(edge_length_extremes(single) == std::pair{5.0, 5.0});
    const CommGraph path = build_comm_graph(line({0, 1, 3}), {1, 2, 2});
    CHECK(edge_length_extremes(path) == std::pair{1.0, 2.0});
    const CommGraph empty = build_comm_graph(line({0, 10}), {1, 1});
    CHECK_THROWS_AS(edge_length_extremes(empty), ModelError);
}

TEST_CASE("edge symmetry against all-pairs predicate on random instances") {
    Rng rng(512);
    for (int inst = 0; inst < 500; ++inst) {
        const auto n = 2 + rng.below(31);
        const auto p = std::make_shared<const PointSet>(
            place_uniform(n, Region({1.0, 1.0}), rng.next_u64()));
        RadiusMap radii(n);
        for (auto& r : radii) r = rng.uniform(0.0, 1.0);
        const CommGraph g = build_comm_graph(p, radii);
        for (NodeId a = 0; a < n; ++a)
            for (NodeId b = 0; b < n; ++b) {
                CHECK(g.adjacent(a, b) == g.adjacent(b, a));
                CHECK(g.adjacent(a, b) == edge_predicate(g, a, b));
            }
    }
}

TEST_CASE("closure is a supergraph and idempotent") {
    Rng rng(77);
    for (int inst = 0; inst < 60; ++inst) {
        const auto n = 2 + rng.below(15);
        const auto p = std::make_shared<const PointSet>(
            place_uniform(n, Region({1.0, 1.0}), rng.next_u64()));
        const EmbeddedGraph h = euclidean_mst(p);
        const CommGraph g = closure(h);
        for (const auto& e : h.edges()) CHECK(g.has_edge(e));
        const CommGraph g2 = closure(EmbeddedGraph(p, g.edges()));
        CHECK(g2.edges() == g.edges());
        CHECK(g2.radii() == g.radii());
    }
}

TEST_CASE("scaling by powers of two preserves structure exactly") {
    Rng rng(31337);
    for (const double alpha : {0.25, 2.0, 1024.0, 0x1.0p-20}) {
        const auto n = 2 + rng.below(15);
        const auto p = std::make_shared<const PointSet>(
            place_uniform(n, Region({1.0, 1.0}), rng.next_u64()));
        RadiusMap radii(n);
        for (auto& r : radii) r = rng.uniform(0.0, 1.0);
        const CommGraph g = build_comm_graph(p, radii);

        std::vector<Point> scaled;
        for (NodeId i = 0; i < n; ++i) {
            Point q = p->point(i);
            for (auto& c : q.coords) c *= alpha;
            scaled.push_back(std::move(q));
        }
        RadiusMap sradii = radii;
        for (auto& r : sradii) r *= alpha;
        const CommGraph gs = build_comm_graph(pts(std::move(scaled)), sradii);

        CHECK(gs.edges() == g.edges());
        for (NodeId i = 0; i < n; ++i) CHECK(interference_at(gs, i) == interference_at(g, i));
        if (!g.edges().empty()) {
            CHECK(in_T(gs) == in_T(g));
            const auto [lo, hi] = edge_length_extremes(g);
            const auto [slo, shi] = edge_length_extremes(gs);
            CHECK(slo == lo * alpha);
            CHECK(shi == hi * alpha);
        }
    }
}

TEST_CASE("interference matches the naive recount on random instances") {
    Rng rng(4242);
    for (int inst = 0; inst < 120; ++inst) {
        const auto n = 2 + rng.below(31);
        const auto p = std::make_shared<const PointSet>(
            place_uniform(n, Region({1.0, 1.0}), rng.next_u64()));
        RadiusMap radii(n);
        for (auto& r : radii) r = rng.uniform(0.0, 1.2);
        const CommGraph g = build_comm_graph(p, radii);
        for (NodeId q = 0; q < n; ++q)
            CHECK(interference_at(g, q) == oracle::naive_interference(*p, radii, q));
    }
}

TEST_CASE("is_bridged matches exhaustive path enumeration") {
    Rng rng(5150);
    for (int inst = 0; inst < 150; ++inst) {
        const auto n = 2 + rng.below(9); // n <= 10
        const auto p = std::make_shared<const PointSet>(
            place_uniform(n, Region({1.0, 1.0}), rng.next_u64()));
        RadiusMap radii(n);
        for (auto& r : radii) r = rng.uniform(0.2, 1.2);
        const CommGraph g = build_comm_graph(p, radii);
        for (const auto& e : g.edges())
            CHECK(is_bridged(g, e) == oracle::exhaustive_bridged(g, e));
    }
}

TEST_CASE("the shortest edge is never bridged") {
    Rng rng(606);
    for (int inst = 0; inst < 100; ++inst) {
        const auto n = 2 + rng.below(15);
        const auto p = std::make_shared<const PointSet>(
            place_uniform(n, Region({1.0, 1.0}), rng.next_u64()));
        RadiusMap radii(n);
        for (auto& r : radii) r = rng.uniform(0.2, 1.0);
        const CommGraph g = build_comm_graph(p, radii);
        if (g.edges().empty()) continue;
        const Edge shortest = *std::min_element(
            g.edges().begin(), g.edges().end(), [&](Edge l, Edge r) {
                return edge_key_less(g.dist(l.a, l.b), l, g.dist(r.a, r.b), r);
            });
        CHECK_FALSE(is_bridged(g, shortest));
    }
}

TEST_CASE("primitive tolerance depends on radius provenance") {
    // external radii within 1e-9 relative of the edge length count as primitive
    const double d = 1.0;
    const CommGraph ext = build_comm_graph(line({0, d}), {d * (1 + 5e-10), d + 1e-10});
    CHECK(is_primitive(ext, {0, 1}));
    const CommGraph far_off = build_comm_graph(line({0, d}), {2.0, 3.0});
    CHECK_FALSE(is_primitive(far_off, {0, 1}));
    CHECK_THROWS_AS(is_primitive(far_off, Edge{0, 2}), ModelError);
}
