#include "itc/oracle.hpp"

#include "itc/construct.hpp"
#include "itc/errors.hpp"
#include "itc/mobility.hpp"
#include "itc/reduction.hpp"
#include "itc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace itc::oracle {
namespace {

double naive_distance(const PointSet& points, NodeId a, NodeId b) {
    double s = 0.0;
    for (int ax = 0; ax < points.dim(); ++ax) {
        const double dx = points.coord(a, ax) - points.coord(b, ax);
        s += dx * dx;
    }
    return std::sqrt(s);
}

bool naive_edge(const PointSet& points, const std::vector<double>& radii, NodeId a, NodeId b) {
    const double d = naive_distance(points, a, b);
    return d <= radii[a] && d <= radii[b];
}

bool naive_connected(const PointSet& points, const std::vector<double>& radii) {
    const std::size_t n = points.size();
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v = 0; v < n; ++v) {
            if (!seen[v] && v != u && naive_edge(points, radii, u, v)) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

std::uint32_t naive_max_interference(const PointSet& points, const std::vector<double>& radii) {
    std::uint32_t best = 0;
    for (NodeId p = 0; p < points.size(); ++p)
        best = std::max(best, naive_interference(points, radii, p));
    return best;
}

} // namespace

std::uint32_t naive_interference(const PointSet& points, const std::vector<double>& radii,
                                 NodeId p) {
    std::uint32_t count = 0;
    for (NodeId q = 0; q < points.size(); ++q) {
        if (q == p) continue;
        if (naive_distance(points, q, p) <= radii[q]) ++count;
    }
    return count;
}

bool exhaustive_bridged(const CommGraph& g, Edge e) {
    e = make_edge(e.a, e.b);
    const PointSet& pts = g.points();
    const auto& radii = g.radii();
    if (!naive_edge(pts, radii, e.a, e.b)) throw ModelError("exhaustive_bridged: not an edge");
    const std::size_t n = pts.size();
    const NodeId p = e.a, q = e.b;
    const double limit = naive_distance(pts, p, q);

    // all simple paths with one edge: only {p,q} itself, never strictly shorter
    for (NodeId v = 0; v < n; ++v) {
        if (v == p || v == q) continue;
        if (naive_edge(pts, radii, p, v) && naive_edge(pts, radii, v, q) &&
            naive_distance(pts, p, v) < limit && naive_distance(pts, v, q) < limit)
            return true;
        for (NodeId w = 0; w < n; ++w) {
            if (w == p || w == q || w == v) continue;
            if (naive_edge(pts, radii, p, v) && naive_edge(pts, radii, v, w) &&
                naive_edge(pts, radii, w, q) && naive_distance(pts, p, v) < limit &&
                naive_distance(pts, v, w) < limit && naive_distance(pts, w, q) < limit)
                return true;
        }
    }
    return false;
}

std::uint32_t brute_force_opt(const PointSet& points) {
    const std::size_t n = points.size();
    if (n < 2 || n > 6) throw OracleError("brute_force_opt: feasible only for 2 <= n <= 6");

    std::vector<std::vector<double>> lattice(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j)
            if (j != i) lattice[i].push_back(naive_distance(points, i, j));
        std::sort(lattice[i].begin(), lattice[i].end());
        lattice[i].erase(std::unique(lattice[i].begin(), lattice[i].end()), lattice[i].end());
    }

    std::vector<std::size_t> choice(n, 0);
    std::vector<double> radii(n);
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    while (true) {
        for (NodeId i = 0; i < n; ++i) radii[i] = lattice[i][choice[i]];
        if (naive_connected(points, radii))
            best = std::min(best, naive_max_interference(points, radii));
        // odometer over the candidate lattice
        std::size_t k = 0;
        while (k < n) {
            if (++choice[k] < lattice[k].size()) break;
            choice[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    if (best == std::numeric_limits<std::uint32_t>::max())
        throw OracleError("brute_force_opt: no connected assignment");
    return best;
}

double exhaustive_min_spanning_weight(const PointSet& points) {
    const std::size_t n = points.size();
    if (n < 2 || n > 8) throw OracleError("exhaustive_min_spanning_weight: need 2 <= n <= 8");
    if (n == 2) return naive_distance(points, 0, 1);

    // Decode every Pruefer sequence of length n-2 into a labelled tree.
    const std::size_t len = n - 2;
    std::vector<NodeId> seq(len, 0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> degree(n);
    while (true) {
        std::fill(degree.begin(), degree.end(), 1);
        for (NodeId v : seq) ++degree[v];
        double weight = 0.0;
        std::vector<bool> used(n, false);
        for (std::size_t i = 0; i < len; ++i) {
            NodeId leaf = 0;
            while (leaf < n && (degree[leaf] != 1 || used[leaf])) ++leaf;
            weight += naive_distance(points, leaf, seq[i]);
            used[leaf] = true;
            --degree[seq[i]];
        }
        NodeId u = 0, v = 0;
        bool first = true;
        for (NodeId w = 0; w < n; ++w) {
            if (used[w] || degree[w] == 0) continue;
            if (first) {
                u = w;
                first = false;
            } else {
                v = w;
            }
        }
        weight += naive_distance(points, u, v);
        best = std::min(best, weight);

        std::size_t k = 0;
        while (k < len) {
            if (++seq[k] < n) break;
            seq[k] = 0;
            ++k;
        }
        if (k == len) break;
    }
    return best;
}

std::vector<double> round_down_to_lattice(const PointSet& points,
                                          const std::vector<double>& radii) {
    const std::size_t n = points.size();
    std::vector<double> rounded(n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
        double best = 0.0;
        for (NodeId j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = naive_distance(points, i, j);
            if (d <= radii[i] && d > best) best = d;
        }
        rounded[i] = best;
    }
    return rounded;
}

SuiteResult run_suite(std::uint64_t seed, int instances, std::ostream* log) {
    SuiteResult result;
    const Region unit({1.0, 1.0});

    for (int inst = 0; inst < instances; ++inst) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(inst)));
        const auto n = static_cast<std::size_t>(2 + rng.below(7)); // 2..8
        const auto points = std::make_shared<const PointSet>(
            place_uniform(n, unit, rng.next_u64()));

        // alternate radius schemes: uniform disc, random per node, closure
        RadiusMap radii(n);
        const int scheme = inst % 3;
        if (scheme == 0) {
            const double r = rng.uniform(0.2, 0.9);
            std::fill(radii.begin(), radii.end(), r);
        } else if (scheme == 1) {
            for (auto& r : radii) r = rng.uniform(0.0, 1.2);
        }
        const CommGraph g = scheme == 2 ? closure(euclidean_mst(points))
                                        : build_comm_graph(points, radii);

        ++result.instances;
        for (NodeId p = 0; p < n; ++p) {
            ++result.interference_checks;
            if (interference_at(g, p) != naive_interference(g.points(), g.radii(), p))
                ++result.mismatches;
        }
        for (const auto& e : g.edges()) {
            ++result.bridged_checks;
            if (is_bridged(g, e) != exhaustive_bridged(g, e)) ++result.mismatches;
        }

        // lattice rounding keeps the edge set and every coverage set
        if (scheme == 1 && n >= 2) {
            ++result.lattice_checks;
            const auto rounded = round_down_to_lattice(g.points(), g.radii());
            const CommGraph g2 = build_comm_graph(points, rounded);
            bool same = g.edges() == g2.edges();
            for (NodeId p = 0; same && p < n; ++p)
                same = naive_interference(g.points(), g.radii(), p) ==
                       naive_interference(g.points(), rounded, p);
            if (!same) ++result.lattice_failures;
        }
    }
    if (log)
        *log << "equivalence: " << result.interference_checks << " interference + "
             << result.bridged_checks << " bridging checks, " << result.mismatches
             << " mismatches\n";

    const int opt_instances = std::max(1, instances / 5);
    for (int inst = 0; inst < opt_instances; ++inst) {
        Rng rng(mix_seed(seed, 0xb0u, static_cast<std::uint64_t>(inst)));
        const auto n = static_cast<std::size_t>(2 + rng.below(4)); // 2..5
        const auto points = std::make_shared<const PointSet>(
            place_uniform(n, unit, rng.next_u64()));
        const CommGraph gmax = build_comm_graph(points, RadiusMap(n, 2.0)); // complete
        const CommGraph gmin = run_protocol(gmax);
        if (!gmin.connected()) continue;
        ++result.opt_instances;
        const std::uint32_t protocol = max_interference(gmin);
        const std::uint32_t optimum = brute_force_opt(*points);
        if (protocol < optimum) ++result.opt_violations;
        if (protocol == optimum) ++result.opt_equalities;
    }
    if (log)
        *log << "opt bound: " << result.opt_instances << " instances, "
             << result.opt_violations << " violations, " << result.opt_equalities
             << " met the optimum\n"
             << "lattice rounding: " << result.lattice_checks << " checks, "
             << result.lattice_failures << " failures\n";
    return result;
}

} // namespace itc::oracle
