#include "polarmon/simd/kernels.hpp"

#include <cstdlib>
#include <string>

namespace polarmon::simd {

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

namespace {

bool cpu_has_avx2() {
#if defined(POLARMON_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& select() {
    const char* forced = std::getenv("POLARMON_SIMD");
    if (forced) {
        const std::string want = forced;
        if (want == "scalar") return generic::table();
        if (want == "avx2") {
            if (const auto* t = kernels_for(Isa::Avx2)) return *t;
        }
        if (want == "neon") {
            if (const auto* t = kernels_for(Isa::Neon)) return *t;
        }
    }
    if (const auto* t = kernels_for(Isa::Avx2)) return *t;
    if (const auto* t = kernels_for(Isa::Neon)) return *t;
    return generic::table();
}

}  // namespace

const KernelTable* kernels_for(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return &generic::table();
        case Isa::Avx2:
#if defined(POLARMON_HAVE_AVX2)
            if (cpu_has_avx2()) return &avx2::table();
#endif
            return nullptr;
        case Isa::Neon:
#if defined(POLARMON_HAVE_NEON)
            return &neon::table();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable& kernels() {
    static const KernelTable& chosen = select();
    return chosen;
}

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
        if (const auto* t = kernels_for(isa)) out.push_back(t);
    return out;
}

}  // namespace polarmon::simd
