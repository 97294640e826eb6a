#include "itc/comm_graph.hpp"

#include "itc/errors.hpp"
#include "itc/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace itc {

CommGraph::CommGraph(std::shared_ptr<const PointSet> points, RadiusMap radii,
                     RadiusProvenance provenance,
                     std::shared_ptr<const DistanceMatrix> matrix)
    : points_(std::move(points)), radii_(std::move(radii)), provenance_(provenance),
      matrix_(std::move(matrix)) {
    if (!points_) throw ModelError("CommGraph: null point set");
    const std::size_t n = points_->size();
    if (radii_.size() != n) throw ModelError("CommGraph: radius map does not cover all nodes");
    for (double r : radii_)
        if (!(r >= 0.0) || !std::isfinite(r)) throw ModelError("CommGraph: invalid radius");
    if (!matrix_) matrix_ = build_distance_matrix(*points_);
    if (matrix_->size() != n) throw ModelError("CommGraph: matrix size mismatch");

    const auto& k = kernels::active();
    adjacency_.resize(n);
    bit_stride_ = (n + 63) / 64;
    adj_bits_.assign(n * bit_stride_, 0);
    interference_.resize(n);

    std::vector<std::uint8_t> flags(n);
    for (NodeId i = 0; i < n; ++i) {
        const double* row = matrix_->row(i).data();
        k.mutual_range_row(row, radii_.data(), n, i, radii_[i], flags.data());
        auto& adj = adjacency_[i];
        for (NodeId j = 0; j < n; ++j) {
            if (!flags[j]) continue;
            adj.push_back(j);
            adj_bits_[i * bit_stride_ + j / 64] |= std::uint64_t{1} << (j % 64);
            if (j > i) edges_.push_back({i, j});
        }
        interference_[i] = k.coverage_count(row, radii_.data(), n, i);
    }

    // Components by iterative DFS, ids normalized by first appearance.
    component_ids_.assign(n, static_cast<NodeId>(n));
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (component_ids_[s] != n) continue;
        const auto comp = static_cast<NodeId>(component_count_++);
        component_ids_[s] = comp;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : adjacency_[u]) {
                if (component_ids_[v] == n) {
                    component_ids_[v] = comp;
                    stack.push_back(v);
                }
            }
        }
    }
}

EmbeddedGraph::EmbeddedGraph(std::shared_ptr<const PointSet> points, std::vector<Edge> edges)
    : points_(std::move(points)), edges_(std::move(edges)) {
    if (!points_) throw ModelError("EmbeddedGraph: null point set");
    const std::size_t n = points_->size();
    degree_.assign(n, 0);
    for (auto& e : edges_) {
        if (e.a > e.b) std::swap(e.a, e.b);
        if (e.b >= n) throw ModelError("EmbeddedGraph: edge endpoint out of range");
        if (e.a == e.b) throw ModelError("EmbeddedGraph: self-loop");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](Edge l, Edge r) { return l.a != r.a ? l.a < r.a : l.b < r.b; });
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw ModelError("EmbeddedGraph: duplicate edge");
    for (const auto& e : edges_) {
        ++degree_[e.a];
        ++degree_[e.b];
    }
}

CommGraph build_comm_graph(std::shared_ptr<const PointSet> points, RadiusMap radii,
                           std::shared_ptr<const DistanceMatrix> matrix) {
    return CommGraph(std::move(points), std::move(radii), RadiusProvenance::External,
                     std::move(matrix));
}

CommGraph closure(const EmbeddedGraph& h, std::shared_ptr<const DistanceMatrix> matrix) {
    const std::size_t n = h.size();
    for (NodeId u = 0; u < n; ++u)
        if (h.degree(u) == 0)
            throw ModelError("closure: isolated node has no defined radius");
    if (!matrix) matrix = build_distance_matrix(h.points());
    RadiusMap radii(n, 0.0);
    for (const auto& e : h.edges()) {
        const double d = (*matrix)(e.a, e.b);
        if (d > radii[e.a]) radii[e.a] = d;
        if (d > radii[e.b]) radii[e.b] = d;
    }
    return CommGraph(h.points_ptr(), std::move(radii), RadiusProvenance::ExactDistances,
                     std::move(matrix));
}

std::uint32_t interference_at(const CommGraph& g, NodeId p) {
    if (p >= g.size()) throw ModelError("interference_at: unknown node");
    return g.interference_[p];
}

std::uint32_t max_interference(const CommGraph& g) {
    std::uint32_t best = 0;
    for (NodeId p = 0; p < g.size(); ++p) best = std::max(best, interference_at(g, p));
    return best;
}

double mean_interference(const CommGraph& g) {
    double sum = 0.0;
    for (NodeId p = 0; p < g.size(); ++p) sum += interference_at(g, p);
    return sum / static_cast<double>(g.size());
}

bool is_primitive(const CommGraph& g, Edge e) {
    e = make_edge(e.a, e.b);
    if (e.b >= g.size() || !g.has_edge(e)) throw ModelError("is_primitive: edge not in graph");
    const double rmin = std::min(g.radius(e.a), g.radius(e.b));
    const double d = g.dist(e.a, e.b);
    if (g.provenance() == RadiusProvenance::ExactDistances) return rmin == d;
    return std::abs(rmin - d) <= 1e-9 * std::max(std::abs(rmin), std::abs(d));
}

bool is_bridged(const CommGraph& g, Edge e) {
    e = make_edge(e.a, e.b);
    if (e.b >= g.size() || !g.has_edge(e)) throw ModelError("is_bridged: edge not in graph");
    const NodeId p = e.a, q = e.b;
    const double limit = g.dist(p, q);
    for (NodeId v : g.neighbours(p)) {
        if (v == q || g.dist(p, v) >= limit) continue;
        if (g.dist(v, q) < limit && g.adjacent(v, q)) return true;
        for (NodeId w : g.neighbours(v)) {
            if (w == p || w == q) continue;
            if (g.dist(v, w) < limit && g.dist(w, q) < limit && g.adjacent(w, q)) return true;
        }
    }
    return false;
}

bool in_T(const CommGraph& g) {
    for (const auto& e : g.edges())
        if (is_primitive(g, e) && is_bridged(g, e)) return false;
    return true;
}

std::vector<std::vector<NodeId>> connected_components(const CommGraph& g) {
    std::vector<std::vector<NodeId>> parts(g.component_count());
    for (NodeId u = 0; u < g.size(); ++u) parts[g.component_ids()[u]].push_back(u);
    return parts;
}

std::pair<double, double> edge_length_extremes(const CommGraph& g) {
    if (g.edges().empty()) throw ModelError("edge_length_extremes: empty edge set");
    double lo = g.dist(g.edges()[0].a, g.edges()[0].b);
    double hi = lo;
    for (const auto& e : g.edges()) {
        const double d = g.dist(e.a, e.b);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

} // namespace itc
