#pragma once

#include "itc/geometry.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace itc {

// Unordered node pair, stored with a < b.
struct Edge {
    NodeId a;
    NodeId b;
    bool operator==(const Edge&) const = default;
};

inline Edge make_edge(NodeId p, NodeId q) { return p < q ? Edge{p, q} : Edge{q, p}; }

// Global deterministic ordering of edges by (length, smaller id, larger id).
// Simulates an infinitesimal perturbation when general position is violated.
inline bool edge_key_less(double len_l, Edge l, double len_r, Edge r) {
    if (len_l != len_r) return len_l < len_r;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
}

// Per-node transmission radii, indexed by NodeId.
using RadiusMap = std::vector<double>;

// Whether radii are exact copies of computed point distances (closure,
// protocol output) or externally supplied values. Primitive-edge tests
// compare exactly in the first case and with relative tolerance 1e-9 in
// the second.
enum class RadiusProvenance { ExactDistances, External };

// Communication graph: points + radii with the derived symmetric edge set
// (edge {p,q} iff dist(p,q) <= min(r(p), r(q))). Immutable after
// construction; the edge set, interference counts and components are all
// derived from points and radii, never stored independently.
class CommGraph {
public:
    CommGraph(std::shared_ptr<const PointSet> points, RadiusMap radii,
              RadiusProvenance provenance,
              std::shared_ptr<const DistanceMatrix> matrix = nullptr);

    std::size_t size() const { return points_->size(); }
    const PointSet& points() const { return *points_; }
    const std::shared_ptr<const PointSet>& points_ptr() const { return points_; }
    const std::shared_ptr<const DistanceMatrix>& matrix_ptr() const { return matrix_; }

    double radius(NodeId id) const { return radii_[id]; }
    const RadiusMap& radii() const { return radii_; }
    RadiusProvenance provenance() const { return provenance_; }

    double dist(NodeId i, NodeId j) const { return (*matrix_)(i, j); }

    std::span<const NodeId> neighbours(NodeId id) const {
        return {adjacency_[id].data(), adjacency_[id].size()};
    }
    std::size_t degree(NodeId id) const { return adjacency_[id].size(); }
    bool adjacent(NodeId i, NodeId j) const {
        return (adj_bits_[i * bit_stride_ + j / 64] >> (j % 64)) & 1u;
    }
    bool has_edge(Edge e) const { return e.a != e.b && adjacent(e.a, e.b); }

    const std::vector<Edge>& edges() const { return edges_; }

    // Component ids normalized by first appearance (node 0's component is 0).
    const std::vector<NodeId>& component_ids() const { return component_ids_; }
    std::size_t component_count() const { return component_count_; }
    bool connected() const { return component_count_ == 1; }

private:
    std::shared_ptr<const PointSet> points_;
    RadiusMap radii_;
    RadiusProvenance provenance_;
    std::shared_ptr<const DistanceMatrix> matrix_;

    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::uint64_t> adj_bits_;
    std::size_t bit_stride_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> interference_;
    std::vector<NodeId> component_ids_;
    std::size_t component_count_ = 0;

    friend std::uint32_t interference_at(const CommGraph&, NodeId);
};

// Arbitrary embedded graph (explicit edge list over a point set); the
// pre-closure representation of MST and Gabriel topologies.
class EmbeddedGraph {
public:
    EmbeddedGraph(std::shared_ptr<const PointSet> points, std::vector<Edge> edges);

    std::size_t size() const { return points_->size(); }
    const PointSet& points() const { return *points_; }
    const std::shared_ptr<const PointSet>& points_ptr() const { return points_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t degree(NodeId id) const { return degree_[id]; }

private:
    std::shared_ptr<const PointSet> points_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> degree_;
};

// Communication graph from explicit radii (externally supplied values).
CommGraph build_comm_graph(std::shared_ptr<const PointSet> points, RadiusMap radii,
                           std::shared_ptr<const DistanceMatrix> matrix = nullptr);

// Edge-minimal communication supergraph of H: each node's radius becomes the
// distance to its furthest H-neighbour. Every node needs degree >= 1.
CommGraph closure(const EmbeddedGraph& h,
                  std::shared_ptr<const DistanceMatrix> matrix = nullptr);

// Number of nodes q != p whose transmission radius covers p. Counts
// coverage, not edges: q counts even when p cannot reach q back.
std::uint32_t interference_at(const CommGraph& g, NodeId p);

std::uint32_t max_interference(const CommGraph& g);
double mean_interference(const CommGraph& g);

// True when the shorter endpoint radius equals the edge length.
bool is_primitive(const CommGraph& g, Edge e);

// True when some path of at most three edges joins the endpoints, every
// edge strictly shorter than the edge length.
bool is_bridged(const CommGraph& g, Edge e);

// True when no primitive edge is bridged.
bool in_T(const CommGraph& g);

std::vector<std::vector<NodeId>> connected_components(const CommGraph& g);

// (shortest, longest) edge length; the edge set must be non-empty.
std::pair<double, double> edge_length_extremes(const CommGraph& g);

} // namespace itc
