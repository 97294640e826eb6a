#include "itc/kernels.hpp"

#include <cmath>

namespace itc::kernels {
namespace {

void distance_row_2d_scalar(const double* xs, const double* ys, std::size_t n,
                            double px, double py, double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        const double dx = xs[j] - px;
        const double dy = ys[j] - py;
        out[j] = std::sqrt(dx * dx + dy * dy);
    }
}

std::uint32_t coverage_count_scalar(const double* dist_row, const double* radii,
                                    std::size_t n, std::size_t self) {
    std::uint32_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j != self && dist_row[j] <= radii[j]) ++count;
    }
    return count;
}

void mutual_range_row_scalar(const double* dist_row, const double* radii, std::size_t n,
                             std::size_t self, double r_self, std::uint8_t* flags) {
    for (std::size_t j = 0; j < n; ++j) {
        const double r = radii[j] < r_self ? radii[j] : r_self;
        flags[j] = dist_row[j] <= r ? 1 : 0;
    }
    flags[self] = 0;
}

bool any_point_in_disc_2d_scalar(const double* xs, const double* ys, std::size_t n,
                                 double cx, double cy, double limit_sq,
                                 std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j) {
        const double dx = xs[j] - cx;
        const double dy = ys[j] - cy;
        if (dx * dx + dy * dy < limit_sq && j != a && j != b) return true;
    }
    return false;
}

} // namespace

const Kernels& scalar() {
    static const Kernels k{
        "scalar",
        &distance_row_2d_scalar,
        &coverage_count_scalar,
        &mutual_range_row_scalar,
        &any_point_in_disc_2d_scalar,
    };
    return k;
}

void distance_row_nd(const double* const* axes, int dim, std::size_t n,
                     const double* p, double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double dx = axes[a][j] - p[a];
            s += dx * dx;
        }
        out[j] = std::sqrt(s);
    }
}

} // namespace itc::kernels
