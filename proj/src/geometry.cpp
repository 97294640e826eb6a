#include "itc/geometry.hpp"

#include "itc/errors.hpp"
#include "itc/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace itc {

double distance(const Point& p, const Point& q) {
    if (p.dim() != q.dim()) throw ModelError("distance: dimension mismatch");
    double s = 0.0;
    for (int a = 0; a < p.dim(); ++a) {
        const double dx = p[a] - q[a];
        s += dx * dx;
    }
    return std::sqrt(s);
}

PointSet::PointSet(const std::vector<Point>& points) {
    if (points.empty()) throw ModelError("PointSet: need at least one point");
    dim_ = points.front().dim();
    axes_.assign(static_cast<std::size_t>(dim_), {});
    for (auto& ax : axes_) ax.reserve(points.size());
    for (const auto& p : points) {
        if (p.dim() != dim_) throw ModelError("PointSet: inconsistent dimensions");
        for (int a = 0; a < dim_; ++a) axes_[static_cast<std::size_t>(a)].push_back(p[a]);
    }
    validate();
}

PointSet::PointSet(int dim, std::vector<std::vector<double>> axes)
    : dim_(dim), axes_(std::move(axes)) {
    if (dim_ < 1 || axes_.size() != static_cast<std::size_t>(dim_))
        throw ModelError("PointSet: axis count does not match dimension");
    for (const auto& ax : axes_) {
        if (ax.size() != axes_[0].size()) throw ModelError("PointSet: ragged axes");
    }
    if (axes_[0].empty()) throw ModelError("PointSet: need at least one point");
    validate();
}

PointSet PointSet::from_xy(std::vector<double> xs, std::vector<double> ys) {
    std::vector<std::vector<double>> axes;
    axes.push_back(std::move(xs));
    axes.push_back(std::move(ys));
    return PointSet(2, std::move(axes));
}

PointSet PointSet::collinear(std::vector<double> xs) {
    std::vector<std::vector<double>> axes;
    axes.push_back(std::move(xs));
    return PointSet(1, std::move(axes));
}

Point PointSet::point(NodeId id) const {
    std::vector<double> c(static_cast<std::size_t>(dim_));
    for (int a = 0; a < dim_; ++a) c[static_cast<std::size_t>(a)] = coord(id, a);
    return Point(std::move(c));
}

double PointSet::node_distance(NodeId a, NodeId b) const {
    double s = 0.0;
    for (int ax = 0; ax < dim_; ++ax) {
        const double dx = coord(a, ax) - coord(b, ax);
        s += dx * dx;
    }
    return std::sqrt(s);
}

bool PointSet::general_position() const {
    std::vector<double> dists;
    const auto n = size();
    dists.reserve(n * (n - 1) / 2);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) dists.push_back(node_distance(i, j));
    std::sort(dists.begin(), dists.end());
    return std::adjacent_find(dists.begin(), dists.end()) == dists.end();
}

void PointSet::validate() const {
    for (const auto& ax : axes_)
        for (double v : ax)
            if (!std::isfinite(v)) throw ModelError("PointSet: non-finite coordinate");
}

bool Region::contains(std::span<const double> pos) const {
    if (pos.size() != extent.size()) return false;
    for (std::size_t a = 0; a < extent.size(); ++a)
        if (pos[a] < 0.0 || pos[a] > extent[a]) return false;
    return true;
}

Point Region::centre() const {
    std::vector<double> c(extent.size());
    for (std::size_t a = 0; a < extent.size(); ++a) c[a] = extent[a] * 0.5;
    return Point(std::move(c));
}

std::shared_ptr<const DistanceMatrix> build_distance_matrix(const PointSet& points) {
    const std::size_t n = points.size();
    std::vector<double> values(n * n);
    if (points.dim() == 2) {
        const double* xs = points.axis(0).data();
        const double* ys = points.axis(1).data();
        const auto& k = kernels::active();
        for (std::size_t i = 0; i < n; ++i)
            k.distance_row_2d(xs, ys, n, xs[i], ys[i], values.data() + i * n);
    } else {
        std::vector<const double*> axes(static_cast<std::size_t>(points.dim()));
        std::vector<double> p(static_cast<std::size_t>(points.dim()));
        for (int a = 0; a < points.dim(); ++a) axes[static_cast<std::size_t>(a)] = points.axis(a).data();
        for (std::size_t i = 0; i < n; ++i) {
            for (int a = 0; a < points.dim(); ++a)
                p[static_cast<std::size_t>(a)] = points.coord(static_cast<NodeId>(i), a);
            kernels::distance_row_nd(axes.data(), points.dim(), n, p.data(),
                                     values.data() + i * n);
        }
    }
    return std::make_shared<DistanceMatrix>(n, std::move(values));
}

} // namespace itc
