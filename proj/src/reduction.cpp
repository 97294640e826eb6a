#include "itc/reduction.hpp"

#include "itc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace itc {

std::optional<std::uint32_t> LocalView::local_index(NodeId id) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
    if (it == nodes.end() || *it != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes.begin());
}

std::uint32_t LocalView::centre_index() const { return *local_index(centre); }

double LocalView::dist(std::uint32_t li, std::uint32_t lj) const {
    const double* a = coords.data() + static_cast<std::size_t>(li) * dim;
    const double* b = coords.data() + static_cast<std::size_t>(lj) * dim;
    double s = 0.0;
    for (int ax = 0; ax < dim; ++ax) {
        const double dx = a[ax] - b[ax];
        s += dx * dx;
    }
    return std::sqrt(s);
}

bool LocalView::adjacent(std::uint32_t li, std::uint32_t lj) const {
    const auto& row = adj[li];
    return std::binary_search(row.begin(), row.end(), lj);
}

LocalView two_hop_view(const CommGraph& g_max, NodeId u) {
    if (u >= g_max.size()) throw ModelError("two_hop_view: unknown node");

    std::vector<NodeId> found{u};
    for (NodeId v : g_max.neighbours(u)) {
        found.push_back(v);
        for (NodeId w : g_max.neighbours(v)) found.push_back(w);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());

    LocalView view;
    view.centre = u;
    view.dim = g_max.points().dim();
    view.nodes = std::move(found);
    view.coords.reserve(view.nodes.size() * view.dim);
    view.max_radius.reserve(view.nodes.size());
    for (NodeId g : view.nodes) {
        for (int a = 0; a < view.dim; ++a) view.coords.push_back(g_max.points().coord(g, a));
        view.max_radius.push_back(g_max.radius(g));
    }
    view.adj.resize(view.nodes.size());
    for (std::uint32_t li = 0; li < view.nodes.size(); ++li) {
        for (NodeId g : g_max.neighbours(view.nodes[li])) {
            if (auto lj = view.local_index(g)) view.adj[li].push_back(*lj);
        }
    }
    return view;
}

namespace {

// Furthest-neighbour ordering: by length, ties broken by the global edge
// ordering so that runs are deterministic without general position.
bool key_greater(const LocalView& view, std::uint32_t lc, std::uint32_t lv,
                 std::uint32_t lw) {
    const double dv = view.dist(lc, lv);
    const double dw = view.dist(lc, lw);
    const Edge ev = make_edge(view.nodes[lc], view.nodes[lv]);
    const Edge ew = make_edge(view.nodes[lc], view.nodes[lw]);
    return edge_key_less(dw, ew, dv, ev);
}

bool bridged_local_idx(const LocalView& view, std::uint32_t la, std::uint32_t lb) {
    const double limit = view.dist(la, lb);
    for (std::uint32_t lv : view.adj[la]) {
        if (view.dist(la, lv) >= limit) continue;
        if (view.dist(lv, lb) < limit && view.adjacent(lv, lb)) return true;
        for (std::uint32_t lw : view.adj[lv]) {
            if (lw == la || lw == lb) continue;
            if (view.dist(lv, lw) < limit && view.dist(lw, lb) < limit &&
                view.adjacent(lw, lb))
                return true;
        }
    }
    return false;
}

} // namespace

bool bridged_local(const LocalView& view, NodeId a, NodeId b) {
    if (a != view.centre) throw ModelError("bridged_local: a must be the view centre");
    const auto lb = view.local_index(b);
    if (!lb) throw ModelError("bridged_local: b not in view");
    return bridged_local_idx(view, view.centre_index(), *lb);
}

double reduce_radius(const LocalView& view) {
    const std::uint32_t lc = view.centre_index();
    const auto& nbrs = view.adj[lc];
    double r = view.max_radius[lc];
    if (nbrs.empty()) return r;

    std::optional<std::uint32_t> f;
    for (std::uint32_t lv : nbrs)
        if (!f || key_greater(view, lc, lv, *f)) f = lv;

    while (true) {
        if (!f) return 0.0; // f fell back to the centre; nothing is bridged to itself
        if (!bridged_local_idx(view, lc, *f)) return r;
        std::optional<std::uint32_t> next;
        for (std::uint32_t lv : nbrs) {
            if (view.dist(lc, lv) < r && (!next || key_greater(view, lc, lv, *next)))
                next = lv;
        }
        f = next;
        r = next ? view.dist(lc, *next) : 0.0;
    }
}

double remove_asymmetric(NodeId u, double r_self,
                         const std::unordered_map<NodeId, double>& neighbour_radii,
                         const LocalView& view) {
    if (u != view.centre) throw ModelError("remove_asymmetric: u must be the view centre");
    const std::uint32_t lc = view.centre_index();
    double best = 0.0;
    for (std::uint32_t lv : view.adj[lc]) {
        const auto it = neighbour_radii.find(view.nodes[lv]);
        if (it == neighbour_radii.end())
            throw ModelError("remove_asymmetric: missing neighbour radius");
        const double d = view.dist(lc, lv);
        if (d <= std::min(r_self, it->second) && d > best) best = d;
    }
    return best;
}

namespace {

// The per-node loop over the shared snapshot. Identical to
// reduce_radius(two_hop_view(g, u)): every adjacency and distance the loop
// consults lies within u's 2-hop neighbourhood.
class SnapshotReducer {
public:
    explicit SnapshotReducer(const CommGraph& g) : g_(g) {}

    double reduce(NodeId u) {
        const auto nbrs = g_.neighbours(u);
        double r = g_.radius(u);
        if (nbrs.empty()) return r;

        // neighbours sorted ascending by (length, id, id); candidates with
        // dist < r' always form a prefix
        sorted_.assign(nbrs.begin(), nbrs.end());
        std::sort(sorted_.begin(), sorted_.end(), [&](NodeId v, NodeId w) {
            return edge_key_less(g_.dist(u, v), make_edge(u, v), g_.dist(u, w),
                                 make_edge(u, w));
        });

        auto idx = static_cast<std::ptrdiff_t>(sorted_.size()) - 1;
        while (true) {
            if (idx < 0) return 0.0;
            if (!bridged(u, sorted_[static_cast<std::size_t>(idx)])) return r;
            while (idx >= 0 && !(g_.dist(u, sorted_[static_cast<std::size_t>(idx)]) < r))
                --idx;
            if (idx < 0) return 0.0;
            r = g_.dist(u, sorted_[static_cast<std::size_t>(idx)]);
        }
    }

private:
    bool bridged(NodeId a, NodeId b) const {
        const auto& m = *g_.matrix_ptr();
        const double limit = m(a, b);
        const double* da = m.row(a).data();
        const double* db = m.row(b).data();
        for (NodeId v : g_.neighbours(a)) {
            if (da[v] >= limit) continue;
            if (db[v] < limit && g_.adjacent(v, b)) return true;
            const double* dv = m.row(v).data();
            for (NodeId w : g_.neighbours(v)) {
                if (w == a || w == b) continue;
                if (dv[w] < limit && db[w] < limit && g_.adjacent(w, b)) return true;
            }
        }
        return false;
    }

    const CommGraph& g_;
    std::vector<NodeId> sorted_;
};

} // namespace

std::vector<double> reduce_all_radii(const CommGraph& g_max) {
    SnapshotReducer reducer(g_max);
    std::vector<double> reduced(g_max.size());
    for (NodeId u = 0; u < g_max.size(); ++u) reduced[u] = reducer.reduce(u);
    return reduced;
}

CommGraph run_protocol(const CommGraph& g_max) {
    const std::size_t n = g_max.size();
    const std::vector<double> phase2 = reduce_all_radii(g_max);

    RadiusMap final_radii(n, 0.0);
    for (NodeId u = 0; u < n; ++u) {
        double best = 0.0;
        for (NodeId v : g_max.neighbours(u)) {
            const double d = g_max.dist(u, v);
            if (d <= std::min(phase2[u], phase2[v]) && d > best) best = d;
        }
        final_radii[u] = best;
    }
    return CommGraph(g_max.points_ptr(), std::move(final_radii),
                     RadiusProvenance::ExactDistances, g_max.matrix_ptr());
}

} // namespace itc
