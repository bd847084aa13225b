#include <atomic>
#include <cstdlib>
#include <string>

#include "otcnet/core/error.hpp"
#include "otcnet/kernels/sweep.hpp"

namespace otcnet::kernels {

#if defined(OTCNET_HAVE_AVX2)
const SweepKernels& avx2_kernel_table();
#endif

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

const SweepKernels* avx2_kernels() {
#if defined(OTCNET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2_kernel_table() : nullptr;
#else
    return nullptr;
#endif
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::Scalar};
    if (avx2_kernels()) out.push_back(Isa::Avx2);
    return out;
}

const SweepKernels& kernels_for(Isa isa) {
    if (isa == Isa::Scalar) return scalar_kernels();
    if (const auto* k = avx2_kernels()) return *k;
    throw ConfigError("kernel variant '" + std::string(isa_name(isa)) + "' is not available on this machine");
}

namespace {

const SweepKernels* initial_choice() {
    if (const char* env = std::getenv("OTCNET_ISA")) {
        const std::string want(env);
        if (want == "scalar") return &scalar_kernels();
        if (want == "avx2" && avx2_kernels()) return avx2_kernels();
    }
    if (const auto* k = avx2_kernels()) return k;
    return &scalar_kernels();
}

std::atomic<const SweepKernels*>& slot() {
    static std::atomic<const SweepKernels*> s{initial_choice()};
    return s;
}

}  // namespace

const SweepKernels& active() { return *slot().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) { slot().store(&kernels_for(isa), std::memory_order_release); }

}  // namespace otcnet::kernels
