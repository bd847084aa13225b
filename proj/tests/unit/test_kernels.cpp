#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>

#include "otcnet/equilibrium/solver.hpp"
#include "otcnet/estimator/forward.hpp"
#include "otcnet/kernels/sweep.hpp"
#include "support.hpp"

using namespace otcnet;
using kernels::Isa;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

/// Restores the process-wide kernel choice on scope exit.
struct IsaGuard {
    Isa saved = kernels::active().isa;
    ~IsaGuard() { kernels::set_active_isa(saved); }
};

}  // namespace

TEST_CASE("scalar kernels are always available") {
    const auto isas = kernels::available_isas();
    REQUIRE(!isas.empty());
    CHECK(isas.front() == Isa::Scalar);
    CHECK(kernels::kernels_for(Isa::Scalar).isa == Isa::Scalar);
}

TEST_CASE("segment max semantics") {
    const std::vector<double> p{1.0, 3.0, 3.0, 2.0, 5.0};
    const std::vector<std::uint32_t> offsets{0, 3, 3, 5};
    std::vector<double> best(3);
    std::vector<std::int32_t> arg(3);
    kernels::segment_max(p, offsets, best, arg);
    CHECK(best[0] == 3.0);
    CHECK(arg[0] == 1);  // tie keeps the lower edge
    CHECK(best[1] == -std::numeric_limits<double>::infinity());
    CHECK(arg[1] == -1);
    CHECK(best[2] == 5.0);
    CHECK(arg[2] == 4);
}

TEST_CASE("every ISA matches the scalar kernels bit for bit") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> val(-200.0, 200.0), prob(0.0, 1.0);
    const auto& ref = kernels::scalar_kernels();
    for (auto isa : kernels::available_isas()) {
        const auto& k = kernels::kernels_for(isa);
        CAPTURE(kernels::isa_name(isa));
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 1001u}) {
            const std::size_t nodes = 17;
            std::vector<double> v(nodes), pi(n), gp(n);
            std::vector<std::uint32_t> s(n), b(n);
            for (auto& x : v) x = val(rng);
            std::uniform_int_distribution<std::uint32_t> node(0, nodes - 1);
            for (std::size_t e = 0; e < n; ++e) {
                pi[e] = prob(rng);
                gp[e] = val(rng);
                s[e] = node(rng);
                b[e] = node(rng);
            }
            std::vector<double> p1(n), p2(n);
            ref.edge_prices(pi.data(), s.data(), b.data(), v.data(), p1.data(), n);
            k.edge_prices(pi.data(), s.data(), b.data(), v.data(), p2.data(), n);
            CHECK(same_bits(p1, p2));

            std::vector<double> g1(n, 0.25), g2(n, 0.25);
            ref.edge_pi_adjoint(s.data(), b.data(), v.data(), gp.data(), g1.data(), n);
            k.edge_pi_adjoint(s.data(), b.data(), v.data(), gp.data(), g2.data(), n);
            CHECK(same_bits(g1, g2));

            std::vector<double> c(n), u(n), best(n), o1(n), o2(n);
            for (std::size_t i = 0; i < n; ++i) {
                c[i] = prob(rng) * 5;
                u[i] = val(rng);
                best[i] = i % 3 == 0 ? -std::numeric_limits<double>::infinity() : val(rng);
            }
            if (n > 2) best[2] = u[2];
            ref.value_update(c.data(), u.data(), best.data(), o1.data(), n);
            k.value_update(c.data(), u.data(), best.data(), o2.data(), n);
            CHECK(same_bits(o1, o2));

            CHECK(ref.max_abs_diff(p1.data(), v.data(), std::min(n, nodes)) ==
                  k.max_abs_diff(p1.data(), v.data(), std::min(n, nodes)));
        }
    }
}

TEST_CASE("solves and gradients are identical under every ISA") {
    IsaGuard guard;
    std::mt19937_64 rng(5);
    const auto g = otcnet::testing::random_graph(rng, 15, 2, 3, 0.5);
    const auto state = otcnet::testing::random_latents(rng, g);
    const ModelParams params{{0.9}, {1.1}, {0.8}};
    std::vector<Observation> obs;
    for (std::size_t n = 0; n < g.num_nodes(); ++n)
        if (g.out_degree(n) > 0) obs.push_back({n, 150.0 + static_cast<double>(n % 7), 1.0 + (n % 3)});

    kernels::set_active_isa(Isa::Scalar);
    const auto ref = solve_fixed_point(state, g, SolveSettings::to_tolerance(1e-12));
    const auto ref_trace = forward(g, params, 10);
    const auto ref_grad = backward(ref_trace, g, obs, params, 0.1).flatten();

    for (auto isa : kernels::available_isas()) {
        CAPTURE(kernels::isa_name(isa));
        kernels::set_active_isa(isa);
        const auto sol = solve_fixed_point(state, g, SolveSettings::to_tolerance(1e-12));
        CHECK(same_bits(sol.v, ref.v));
        CHECK(same_bits(sol.p, ref.p));
        CHECK(sol.iterations_used == ref.iterations_used);
        const auto trace = forward(g, params, 10);
        CHECK(same_bits(trace.pred_best, ref_trace.pred_best));
        CHECK(same_bits(backward(trace, g, obs, params, 0.1).flatten(), ref_grad));
    }
}
