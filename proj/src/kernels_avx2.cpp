#include "itc/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace itc::kernels {
namespace {

void distance_row_2d_avx2(const double* xs, const double* ys, std::size_t n,
                          double px, double py, double* out) {
    const __m256d vpx = _mm256_set1_pd(px);
    const __m256d vpy = _mm256_set1_pd(py);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + j), vpx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + j), vpy);
        // mul+add (not FMA) to match the scalar rounding exactly
        const __m256d s = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_storeu_pd(out + j, _mm256_sqrt_pd(s));
    }
    for (; j < n; ++j) {
        const double dx = xs[j] - px;
        const double dy = ys[j] - py;
        __m128d s = _mm_set_sd(dx * dx + dy * dy);
        out[j] = _mm_cvtsd_f64(_mm_sqrt_sd(s, s));
    }
}

std::uint32_t coverage_count_avx2(const double* dist_row, const double* radii,
                                  std::size_t n, std::size_t self) {
    std::uint32_t count = 0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d d = _mm256_loadu_pd(dist_row + j);
        const __m256d r = _mm256_loadu_pd(radii + j);
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d, r, _CMP_LE_OQ));
        count += static_cast<std::uint32_t>(__builtin_popcount(mask));
    }
    for (; j < n; ++j) {
        if (dist_row[j] <= radii[j]) ++count;
    }
    // Self lane was counted like any other; remove its contribution.
    if (self < n && dist_row[self] <= radii[self]) --count;
    return count;
}

void mutual_range_row_avx2(const double* dist_row, const double* radii, std::size_t n,
                           std::size_t self, double r_self, std::uint8_t* flags) {
    const __m256d vr_self = _mm256_set1_pd(r_self);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d d = _mm256_loadu_pd(dist_row + j);
        const __m256d r = _mm256_min_pd(_mm256_loadu_pd(radii + j), vr_self);
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d, r, _CMP_LE_OQ));
        flags[j + 0] = static_cast<std::uint8_t>(mask & 1);
        flags[j + 1] = static_cast<std::uint8_t>((mask >> 1) & 1);
        flags[j + 2] = static_cast<std::uint8_t>((mask >> 2) & 1);
        flags[j + 3] = static_cast<std::uint8_t>((mask >> 3) & 1);
    }
    for (; j < n; ++j) {
        const double r = radii[j] < r_self ? radii[j] : r_self;
        flags[j] = dist_row[j] <= r ? 1 : 0;
    }
    flags[self] = 0;
}

bool any_point_in_disc_2d_avx2(const double* xs, const double* ys, std::size_t n,
                               double cx, double cy, double limit_sq,
                               std::size_t a, std::size_t b) {
    const __m256d vcx = _mm256_set1_pd(cx);
    const __m256d vcy = _mm256_set1_pd(cy);
    const __m256d vlim = _mm256_set1_pd(limit_sq);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + j), vcx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + j), vcy);
        const __m256d s = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(s, vlim, _CMP_LT_OQ));
        while (mask != 0) {
            const int lane = __builtin_ctz(static_cast<unsigned>(mask));
            const std::size_t idx = j + static_cast<std::size_t>(lane);
            if (idx != a && idx != b) return true;
            mask &= mask - 1;
        }
    }
    for (; j < n; ++j) {
        const double dx = xs[j] - cx;
        const double dy = ys[j] - cy;
        if (dx * dx + dy * dy < limit_sq && j != a && j != b) return true;
    }
    return false;
}

} // namespace

const Kernels* avx2_impl() {
    static const Kernels k{
        "avx2",
        &distance_row_2d_avx2,
        &coverage_count_avx2,
        &mutual_range_row_avx2,
        &any_point_in_disc_2d_avx2,
    };
    return &k;
}

} // namespace itc::kernels

#endif // __AVX2__
