#include "itc/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace itc::kernels {

#if defined(ITC_HAVE_AVX2_TU)
const Kernels* avx2_impl(); // defined in kernels_avx2.cpp

static bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Kernels* avx2() {
    static const Kernels* k = cpu_has_avx2() ? avx2_impl() : nullptr;
    return k;
}
#else
const Kernels* avx2() { return nullptr; }
#endif

namespace {

const Kernels* pick_default() {
    if (const char* env = std::getenv("ITC_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar();
        if (std::strcmp(env, "avx2") == 0 && avx2() != nullptr) return avx2();
        // Unknown or unavailable request falls back to the best available.
    }
    return avx2() != nullptr ? avx2() : &scalar();
}

const Kernels*& active_slot() {
    static const Kernels* slot = pick_default();
    return slot;
}

} // namespace

const Kernels& active() { return *active_slot(); }

void force(const char* name) {
    if (std::strcmp(name, "scalar") == 0) {
        active_slot() = &scalar();
        return;
    }
    if (std::strcmp(name, "avx2") == 0) {
        if (avx2() == nullptr) throw std::runtime_error("avx2 kernels unavailable");
        active_slot() = avx2();
        return;
    }
    throw std::runtime_error("unknown kernel set");
}

} // namespace itc::kernels
