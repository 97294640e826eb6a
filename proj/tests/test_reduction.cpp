#include "itc/reduction.hpp"

#include "itc/construct.hpp"
#include "itc/errors.hpp"
#include "itc/mobility.hpp"
#include "itc/oracle.hpp"
#include "itc/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace itc;

namespace {

std::shared_ptr<const PointSet> line(std::vector<double> xs) {
    return std::make_shared<const PointSet>(PointSet::collinear(std::move(xs)));
}

// convenience: fixed uniform-radius graph
CommGraph graph_on_line(std::vector<double> xs, double rmax) {
    auto p = line(std::move(xs));
    return build_comm_graph(p, RadiusMap(p->size(), rmax));
}

bool edges_subset(const CommGraph& sub, const CommGraph& super) {
    return std::all_of(sub.edges().begin(), sub.edges().end(),
                       [&](Edge e) { return super.has_edge(e); });
}

} // namespace

TEST_CASE("two_hop_view") {
    SUBCASE("isolated node sees only itself") {
        const CommGraph g = graph_on_line({0, 100}, 1);
        const LocalView v = two_hop_view(g, 0);
        CHECK(v.nodes == std::vector<NodeId>{0});
    }
    SUBCASE("path a-b-c-d: view of a is {a,b,c}") {
        const CommGraph g = graph_on_line({0, 1, 2, 3}, 1);
        const LocalView v = two_hop_view(g, 0);
        CHECK(v.nodes == std::vector<NodeId>{0, 1, 2});
        CHECK(v.adjacent(*v.local_index(0), *v.local_index(1)));
        CHECK(v.adjacent(*v.local_index(1), *v.local_index(2)));
        CHECK_FALSE(v.adjacent(*v.local_index(0), *v.local_index(2)));
    }
    SUBCASE("complete graph: every view holds all nodes") {
        const CommGraph g = graph_on_line({0, 1, 2, 3}, 10);
        for (NodeId u = 0; u < 4; ++u) CHECK(two_hop_view(g, u).nodes.size() == 4);
    }
    SUBCASE("unknown node") {
        const CommGraph g = graph_on_line({0}, 1);
        CHECK_THROWS_AS(two_hop_view(g, 3), ModelError);
    }
}

TEST_CASE("bridged_local mirrors the subroutine") {
    const CommGraph g = graph_on_line({0, 0.5, 10}, 10);
    const LocalView v0 = two_hop_view(g, 0);
    CHECK(bridged_local(v0, 0, 2));       // detour 0 -> 0.5 -> 10
    CHECK_FALSE(bridged_local(v0, 0, 1)); // shortest edge

    const CommGraph h = graph_on_line({0, 0.2, 9.8, 10}, 10.5);
    const LocalView w0 = two_hop_view(h, 0);
    CHECK(bridged_local(w0, 0, 3)); // 3-edge detour

    CHECK_THROWS_AS(bridged_local(v0, 1, 2), ModelError); // a must be the centre
    const CommGraph far_apart = graph_on_line({0, 1, 50}, 2);
    const LocalView vf = two_hop_view(far_apart, 0);
    CHECK_THROWS_AS(bridged_local(vf, 0, 2), ModelError); // b outside the view
}

TEST_CASE("reduce_radius on the 3-node line") {
    const CommGraph g = graph_on_line({0, 0.5, 10}, 10);
    CHECK(reduce_radius(two_hop_view(g, 0)) == 0.5);
    CHECK(reduce_radius(two_hop_view(g, 2)) == 9.5);
    CHECK(reduce_radius(two_hop_view(g, 1)) == 10.0); // furthest neighbour not bridged
}

TEST_CASE("reduce_radius keeps r_max for a single unbridged neighbour") {
    const CommGraph g = graph_on_line({0, 3}, 7);
    CHECK(reduce_radius(two_hop_view(g, 0)) == 7.0);
    const CommGraph iso = graph_on_line({0, 100}, 1);
    CHECK(reduce_radius(two_hop_view(iso, 0)) == 1.0); // isolated: nothing constrains it
}

TEST_CASE("reduce_radius on the 4-node line") {
    const CommGraph g = graph_on_line({0, 0.2, 9.8, 10}, 10.5);
    // radii land exactly on the surviving link lengths (0.2, 9.6, 9.6, 0.2)
    CHECK(reduce_radius(two_hop_view(g, 0)) == g.dist(0, 1));
    CHECK(reduce_radius(two_hop_view(g, 0)) == 0.2);
    CHECK(reduce_radius(two_hop_view(g, 3)) == g.dist(2, 3));
    CHECK(reduce_radius(two_hop_view(g, 3)) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(reduce_radius(two_hop_view(g, 1)) == g.dist(1, 2));
    CHECK(reduce_radius(two_hop_view(g, 1)) == doctest::Approx(9.6).epsilon(1e-12));
    CHECK(reduce_radius(two_hop_view(g, 2)) == g.dist(1, 2));
}

TEST_CASE("remove_asymmetric") {
    SUBCASE("symmetric pair is kept") {
        const CommGraph g = graph_on_line({0, 3}, 7);
        const LocalView v = two_hop_view(g, 0);
        CHECK(remove_asymmetric(0, 7.0, {{1, 7.0}}, v) == 3.0);
    }
    SUBCASE("asymmetric far neighbour falls away") {
        // u at 0 with v1 at distance 5 (radius 3) and v2 at distance 2 (radius 4)
        const auto p = std::make_shared<const PointSet>(
            PointSet({Point{0, 0}, Point{5, 0}, Point{0, 2}}));
        const CommGraph g = build_comm_graph(p, {5, 5, 5});
        const LocalView v = two_hop_view(g, 0);
        CHECK(remove_asymmetric(0, 5.0, {{1, 3.0}, {2, 4.0}}, v) == 2.0);
    }
    SUBCASE("3-node line after phase 2") {
        const CommGraph g = graph_on_line({0, 0.5, 10}, 10);
        CHECK(remove_asymmetric(0, 0.5, {{1, 10.0}, {2, 9.5}}, two_hop_view(g, 0)) == 0.5);
        CHECK(remove_asymmetric(1, 10.0, {{0, 0.5}, {2, 9.5}}, two_hop_view(g, 1)) == 9.5);
        CHECK(remove_asymmetric(2, 9.5, {{0, 0.5}, {1, 10.0}}, two_hop_view(g, 2)) == 9.5);
    }
    SUBCASE("missing neighbour radius") {
        const CommGraph g = graph_on_line({0, 3}, 7);
        CHECK_THROWS_AS(remove_asymmetric(0, 7.0, {}, two_hop_view(g, 0)), ModelError);
    }
}

TEST_CASE("run_protocol fixtures") {
    SUBCASE("n=2 keeps its edge") {
        const CommGraph gmax = graph_on_line({0, 3}, 7);
        const CommGraph gmin = run_protocol(gmax);
        CHECK(gmin.edges() == gmax.edges());
        CHECK(gmin.radius(0) == 3.0);
        CHECK(max_interference(gmin) == 1);
    }
    SUBCASE("3-node line becomes the path") {
        const CommGraph gmin = run_protocol(graph_on_line({0, 0.5, 10}, 10));
        CHECK(gmin.radii() == RadiusMap{0.5, 9.5, 9.5});
        CHECK(gmin.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
        CHECK(interference_at(gmin, 0) == 1);
        CHECK(max_interference(gmin) == 2);
        CHECK(in_T(gmin));
    }
    SUBCASE("4-node line becomes the path") {
        const CommGraph gmin = run_protocol(graph_on_line({0, 0.2, 9.8, 10}, 10.5));
        CHECK(gmin.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
        CHECK(max_interference(gmin) == 2);
        CHECK(interference_at(gmin, 1) == 2);
        CHECK(interference_at(gmin, 2) == 2);
    }
}

TEST_CASE("protocol invariants on random connected instances") {
    Rng rng(2718);
    int connected_seen = 0;
    for (int inst = 0; inst < 300; ++inst) {
        const auto n = 2 + rng.below(59);
        const auto p = std::make_shared<const PointSet>(
            place_uniform(n, Region({1000.0, 1000.0}), rng.next_u64()));
        const CommGraph gmax = build_comm_graph(p, RadiusMap(n, 400.0));
        const std::vector<double> phase2 = reduce_all_radii(gmax);
        for (NodeId u = 0; u < n; ++u) {
            CHECK(phase2[u] <= gmax.radius(u));
            // r' is r_max, zero, or the exact distance to some neighbour
            bool valid = phase2[u] == gmax.radius(u) || phase2[u] == 0.0;
            for (NodeId v : gmax.neighbours(u)) valid = valid || gmax.dist(u, v) == phase2[u];
            CHECK(valid);
        }
        const CommGraph gmin = run_protocol(gmax);
        CHECK(edges_subset(gmin, gmax));
        CHECK(in_T(gmin));
        CHECK(gmin.component_ids() == gmax.component_ids());
        if (gmax.connected()) {
            ++connected_seen;
            CHECK(gmin.connected());
        }
        // no asymmetric residue: every positive radius is used by some edge
        for (NodeId u = 0; u < n; ++u) {
            if (gmin.radius(u) <= 0.0) continue;
            bool used = false;
            for (NodeId v : gmin.neighbours(u))
                used = used || gmin.dist(u, v) == gmin.radius(u);
            CHECK(used);
        }
    }
    CHECK(connected_seen > 100);
}

TEST_CASE("phase 2 is order independent and matches the view-based operation") {
    Rng rng(161803);
    for (int inst = 0; inst < 25; ++inst) {
        const auto n = 2 + rng.below(39);
        const auto p = std::make_shared<const PointSet>(
            place_uniform(n, Region({1.0, 1.0}), rng.next_u64()));
        const CommGraph gmax = build_comm_graph(p, RadiusMap(n, rng.uniform(0.2, 0.8)));
        const std::vector<double> fast = reduce_all_radii(gmax);
        std::vector<NodeId> order(n);
        for (NodeId u = 0; u < n; ++u) order[u] = u;
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        for (NodeId u : order) CHECK(reduce_radius(two_hop_view(gmax, u)) == fast[u]);
    }
}

TEST_CASE("component partition preserved on disconnected instances") {
    Rng rng(999);
    for (int inst = 0; inst < 120; ++inst) {
        // two clusters too far apart to interconnect
        const auto a = place_uniform(8 + rng.below(8), Region({300.0, 1000.0}), rng.next_u64());
        const auto b = place_uniform(8 + rng.below(8), Region({300.0, 1000.0}), rng.next_u64());
        std::vector<Point> merged;
        for (NodeId i = 0; i < a.size(); ++i) merged.push_back(a.point(i));
        for (NodeId i = 0; i < b.size(); ++i) {
            Point q = b.point(i);
            q.coords[0] += 700.0;
            merged.push_back(std::move(q));
        }
        const auto p = std::make_shared<const PointSet>(PointSet(std::move(merged)));
        const CommGraph gmax = build_comm_graph(p, RadiusMap(p->size(), 250.0));
        REQUIRE_FALSE(gmax.connected());
        const CommGraph gmin = run_protocol(gmax);
        CHECK(gmin.component_ids() == gmax.component_ids());
        CHECK(gmin.component_count() == gmax.component_count());
    }
}
