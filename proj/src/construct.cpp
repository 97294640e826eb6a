#include "itc/construct.hpp"

#include "itc/errors.hpp"
#include "itc/kernels.hpp"

#include <algorithm>
#include <numeric>

namespace itc {
namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), NodeId{0});
    }
    NodeId find(NodeId x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<NodeId> parent_;
};

} // namespace

EmbeddedGraph euclidean_mst(std::shared_ptr<const PointSet> points,
                            std::shared_ptr<const DistanceMatrix> matrix) {
    const std::size_t n = points->size();
    if (n < 2) throw ModelError("euclidean_mst: need at least 2 points");
    if (!matrix) matrix = build_distance_matrix(*points);

    std::vector<WeightedEdge> all;
    all.reserve(n * (n - 1) / 2);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) all.push_back({{i, j}, (*matrix)(i, j)});
    std::sort(all.begin(), all.end(), [](const WeightedEdge& l, const WeightedEdge& r) {
        return edge_key_less(l.length, l.edge, r.length, r.edge);
    });

    UnionFind uf(n);
    std::vector<Edge> tree;
    tree.reserve(n - 1);
    for (const auto& we : all) {
        if (uf.unite(we.edge.a, we.edge.b)) {
            tree.push_back(we.edge);
            if (tree.size() == n - 1) break;
        }
    }
    return EmbeddedGraph(std::move(points), std::move(tree));
}

CommGraph unit_disc_graph(std::shared_ptr<const PointSet> points, double r,
                          std::shared_ptr<const DistanceMatrix> matrix) {
    if (!(r > 0.0)) throw ModelError("unit_disc_graph: radius must be positive");
    RadiusMap radii(points->size(), r);
    return CommGraph(std::move(points), std::move(radii), RadiusProvenance::External,
                     std::move(matrix));
}

EmbeddedGraph gabriel_udg(std::shared_ptr<const PointSet> points, double r,
                          std::shared_ptr<const DistanceMatrix> matrix) {
    if (!(r > 0.0)) throw ModelError("gabriel_udg: radius must be positive");
    const std::size_t n = points->size();
    if (!matrix) matrix = build_distance_matrix(*points);
    const int dim = points->dim();

    std::vector<Edge> kept;
    if (dim == 2) {
        const double* xs = points->axis(0).data();
        const double* ys = points->axis(1).data();
        const auto& k = kernels::active();
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j = i + 1; j < n; ++j) {
                if ((*matrix)(i, j) > r) continue;
                const double mx = (xs[i] + xs[j]) * 0.5;
                const double my = (ys[i] + ys[j]) * 0.5;
                const double dx = xs[i] - xs[j];
                const double dy = ys[i] - ys[j];
                // quarter of the squared diameter; *0.25 is exact
                const double limit_sq = (dx * dx + dy * dy) * 0.25;
                if (!k.any_point_in_disc_2d(xs, ys, n, mx, my, limit_sq, i, j))
                    kept.push_back({i, j});
            }
        }
    } else {
        std::vector<double> mid(static_cast<std::size_t>(dim));
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j = i + 1; j < n; ++j) {
                if ((*matrix)(i, j) > r) continue;
                double limit_sq = 0.0;
                for (int a = 0; a < dim; ++a) {
                    mid[static_cast<std::size_t>(a)] =
                        (points->coord(i, a) + points->coord(j, a)) * 0.5;
                    const double dx = points->coord(i, a) - points->coord(j, a);
                    limit_sq += dx * dx;
                }
                limit_sq *= 0.25;
                bool blocked = false;
                for (NodeId w = 0; w < n && !blocked; ++w) {
                    if (w == i || w == j) continue;
                    double s = 0.0;
                    for (int a = 0; a < dim; ++a) {
                        const double dw = points->coord(w, a) - mid[static_cast<std::size_t>(a)];
                        s += dw * dw;
                    }
                    blocked = s < limit_sq;
                }
                if (!blocked) kept.push_back({i, j});
            }
        }
    }
    return EmbeddedGraph(std::move(points), std::move(kept));
}

} // namespace itc
