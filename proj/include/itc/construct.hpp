#pragma once

#include "itc/comm_graph.hpp"

namespace itc {

struct WeightedEdge {
    Edge edge;
    double length;
};

// Euclidean minimum spanning tree over the complete graph on the point set.
// Deterministic: Kruskal over the global (length, id, id) edge ordering.
EmbeddedGraph euclidean_mst(std::shared_ptr<const PointSet> points,
                            std::shared_ptr<const DistanceMatrix> matrix = nullptr);

// Communication graph with the uniform radius r at every node.
CommGraph unit_disc_graph(std::shared_ptr<const PointSet> points, double r,
                          std::shared_ptr<const DistanceMatrix> matrix = nullptr);

// Intersection of the Gabriel graph and the unit disc graph of radius r:
// edge {u,v} kept iff dist(u,v) <= r and no third point lies strictly inside
// the open ball whose diameter is the segment uv.
EmbeddedGraph gabriel_udg(std::shared_ptr<const PointSet> points, double r,
                          std::shared_ptr<const DistanceMatrix> matrix = nullptr);

} // namespace itc
