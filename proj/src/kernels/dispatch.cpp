#include <cstdlib>
#include <string>

#include "coaxflux/error.hpp"
#include "coaxflux/kernels.hpp"

namespace coaxflux::kernels {

#if defined(COAXFLUX_HAVE_AVX2)
const Backend* avx2_backend_table(); // kernels_avx2.cpp
#endif

namespace {

bool cpu_has_avx2() {
#if defined(COAXFLUX_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend* g_active = nullptr;

const Backend* resolve(const std::string& name) {
    if (name == "scalar") return &scalar_backend();
    if (name == "avx2") {
        const Backend* b = avx2_backend();
        if (!b)
            throw ConfigError("kernel backend 'avx2' unavailable on this "
                              "build/CPU");
        return b;
    }
    if (name == "auto" || name.empty()) {
        const Backend* b = avx2_backend();
        return b ? b : &scalar_backend();
    }
    throw ConfigError("unknown kernel backend '" + name +
                      "' (expected auto|scalar|avx2)");
}

} // namespace

const Backend* avx2_backend() {
#if defined(COAXFLUX_HAVE_AVX2)
    return cpu_has_avx2() ? avx2_backend_table() : nullptr;
#else
    return nullptr;
#endif
}

const Backend& active_backend() {
    if (!g_active) {
        const char* env = std::getenv("COAXFLUX_KERNELS");
        g_active = resolve(env ? env : "auto");
    }
    return *g_active;
}

void select_backend(const char* name) { g_active = resolve(name ? name : "auto"); }

} // namespace coaxflux::kernels
