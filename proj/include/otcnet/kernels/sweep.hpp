#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace otcnet::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Data-parallel inner loops of one message-passing sweep and its adjoint.
///
/// Every variant must produce bit-identical results to the scalar reference:
/// the same IEEE operations in the same order, no fused multiply-add.
struct SweepKernels {
    Isa isa;

    /// p[e] = pi[e] * v[seller[e]] + (1 - pi[e]) * v[buyer[e]]
    void (*edge_prices)(const double* pi, const std::uint32_t* seller, const std::uint32_t* buyer, const double* v,
                        double* p, std::size_t n_edges);

    /// v_out[i] = -c[i] + max(u[i], best[i]); best is -inf for sellers without buyers.
    void (*value_update)(const double* c, const double* u, const double* best, double* v_out, std::size_t n);

    /// max_i |a[i] - b[i]| for finite inputs.
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);

    /// g_pi[e] += (v[seller[e]] - v[buyer[e]]) * g_p[e]
    void (*edge_pi_adjoint)(const std::uint32_t* seller, const std::uint32_t* buyer, const double* v,
                            const double* g_p, double* g_pi, std::size_t n_edges);
};

const SweepKernels& scalar_kernels();
/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const SweepKernels* avx2_kernels();

/// Variants usable on this machine, scalar first.
std::vector<Isa> available_isas();
const SweepKernels& kernels_for(Isa isa);

/// Kernel table used by the solver and estimator. Defaults to the widest
/// available ISA; the OTCNET_ISA environment variable (scalar|avx2) overrides.
const SweepKernels& active();
void set_active_isa(Isa isa);

/// Per-seller maximum over a CSR edge range. best[i] = -inf and
/// best_edge[i] = -1 for sellers without buyers; ties keep the lowest edge
/// index (the lowest buyer id). Scalar only: segments are short and ragged.
void segment_max(std::span<const double> p, std::span<const std::uint32_t> offsets, std::span<double> best,
                 std::span<std::int32_t> best_edge);

}  // namespace otcnet::kernels
