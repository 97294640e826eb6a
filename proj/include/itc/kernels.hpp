#pragma once

#include <cstddef>
#include <cstdint>

namespace itc::kernels {

// Data-parallel inner loops over column-major coordinate arrays. Every entry
// has a scalar reference implementation and, on x86-64, an AVX2 variant
// selected at runtime. Variants must produce bitwise-identical results: the
// arithmetic per element is pinned to mul/add/sqrt in a fixed order (no FMA
// contraction), which IEEE-754 makes deterministic across both paths.
struct Kernels {
    const char* name;

    // out[j] = Euclidean distance from (px,py) to (xs[j],ys[j]).
    void (*distance_row_2d)(const double* xs, const double* ys, std::size_t n,
                            double px, double py, double* out);

    // Count of j != self with dist_row[j] <= radii[j] (coverage count).
    std::uint32_t (*coverage_count)(const double* dist_row, const double* radii,
                                    std::size_t n, std::size_t self);

    // flags[j] = dist_row[j] <= min(r_self, radii[j]); flags[self] forced 0.
    void (*mutual_range_row)(const double* dist_row, const double* radii, std::size_t n,
                             std::size_t self, double r_self, std::uint8_t* flags);

    // True when some j outside {a, b} has squared distance to (cx, cy)
    // strictly below limit_sq (open-disc containment test).
    bool (*any_point_in_disc_2d)(const double* xs, const double* ys, std::size_t n,
                                 double cx, double cy, double limit_sq,
                                 std::size_t a, std::size_t b);
};

const Kernels& scalar();
const Kernels* avx2(); // nullptr when unsupported by the build or the CPU

// Active set: AVX2 when the CPU has it, else scalar. The ITC_KERNELS
// environment variable ("scalar" or "avx2") overrides at process start.
const Kernels& active();

// Test hook: force a named variant ("scalar"/"avx2"). Throws if unavailable.
void force(const char* name);

// Scalar fallback for arbitrary dimension; axes is an array of d pointers.
void distance_row_nd(const double* const* axes, int dim, std::size_t n,
                     const double* p, double* out);

} // namespace itc::kernels
