#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace itc {

using NodeId = std::uint32_t;

// A position in R^d. Thin value type used at API boundaries; bulk geometry
// runs on the column-major storage inside PointSet.
struct Point {
    std::vector<double> coords;

    Point() = default;
    Point(std::initializer_list<double> c) : coords(c) {}
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}

    int dim() const { return static_cast<int>(coords.size()); }
    double operator[](int axis) const { return coords[static_cast<std::size_t>(axis)]; }
    bool operator==(const Point& other) const = default;
};

// Euclidean distance. All distances in the library are computed with this
// exact operation order (per-axis squared differences accumulated in axis
// order, then sqrt) so that values recomputed anywhere compare bitwise equal.
double distance(const Point& p, const Point& q);

// Dense set of nodes 0..n-1 with column-major coordinate storage.
class PointSet {
public:
    explicit PointSet(const std::vector<Point>& points);
    PointSet(int dim, std::vector<std::vector<double>> axes);

    static PointSet from_xy(std::vector<double> xs, std::vector<double> ys);
    // 1-D helper, used heavily by tests for collinear fixtures.
    static PointSet collinear(std::vector<double> xs);

    std::size_t size() const { return axes_.empty() ? 0 : axes_[0].size(); }
    int dim() const { return dim_; }

    double coord(NodeId id, int axis) const {
        return axes_[static_cast<std::size_t>(axis)][id];
    }
    Point point(NodeId id) const;
    std::span<const double> axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }

    double node_distance(NodeId a, NodeId b) const;

    // True when all pairwise distances are distinct (general position).
    bool general_position() const;

private:
    void validate() const;

    int dim_ = 0;
    std::vector<std::vector<double>> axes_; // axes_[axis][node]
};

// Axis-aligned simulation region [0, extent_0] x ... x [0, extent_{d-1}].
struct Region {
    std::vector<double> extent;

    Region() : extent{1000.0, 1000.0} {}
    explicit Region(std::vector<double> e) : extent(std::move(e)) {}

    int dim() const { return static_cast<int>(extent.size()); }
    bool contains(std::span<const double> pos) const;
    Point centre() const;
};

// Dense n x n matrix of pairwise distances. Exactly symmetric because the
// squared differences are sign-insensitive.
class DistanceMatrix {
public:
    DistanceMatrix(std::size_t n, std::vector<double> values)
        : n_(n), values_(std::move(values)) {}

    std::size_t size() const { return n_; }
    double operator()(NodeId i, NodeId j) const { return values_[i * n_ + j]; }
    std::span<const double> row(NodeId i) const { return {values_.data() + i * n_, n_}; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

std::shared_ptr<const DistanceMatrix> build_distance_matrix(const PointSet& points);

} // namespace itc
