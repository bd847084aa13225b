#include <cmath>
#include <limits>

#include "otcnet/kernels/sweep.hpp"

namespace otcnet::kernels {

namespace {

void edge_prices_scalar(const double* pi, const std::uint32_t* seller, const std::uint32_t* buyer, const double* v,
                        double* p, std::size_t n) {
    for (std::size_t e = 0; e < n; ++e) {
        const double w = pi[e];
        p[e] = w * v[seller[e]] + (1.0 - w) * v[buyer[e]];
    }
}

void value_update_scalar(const double* c, const double* u, const double* best, double* v_out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double m = best[i] > u[i] ? best[i] : u[i];
        v_out[i] = -c[i] + m;
    }
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

void edge_pi_adjoint_scalar(const std::uint32_t* seller, const std::uint32_t* buyer, const double* v,
                            const double* g_p, double* g_pi, std::size_t n) {
    for (std::size_t e = 0; e < n; ++e) g_pi[e] += (v[seller[e]] - v[buyer[e]]) * g_p[e];
}

}  // namespace

const SweepKernels& scalar_kernels() {
    static const SweepKernels k{Isa::Scalar, edge_prices_scalar, value_update_scalar, max_abs_diff_scalar,
                                edge_pi_adjoint_scalar};
    return k;
}

void segment_max(std::span<const double> p, std::span<const std::uint32_t> offsets, std::span<double> best,
                 std::span<std::int32_t> best_edge) {
    const std::size_t n = offsets.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        double m = -std::numeric_limits<double>::infinity();
        std::int32_t arg = -1;
        for (auto e = offsets[i]; e < offsets[i + 1]; ++e) {
            if (arg < 0 || p[e] > m) {
                m = p[e];
                arg = static_cast<std::int32_t>(e);
            }
        }
        best[i] = m;
        best_edge[i] = arg;
    }
}

}  // namespace otcnet::kernels
