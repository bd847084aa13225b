#include "otcnet/equilibrium/solver.hpp"

#include <cmath>
#include <string>

#include "otcnet/core/error.hpp"
#include "otcnet/kernels/sweep.hpp"

namespace otcnet {

void SolveSettings::validate() const {
    if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
    if (mode == SolveMode::ToTolerance && !(tol > 0)) throw ConfigError("tol must be positive in to-tolerance mode");
}

void sweep(const TradingGraph& graph, std::span<const double> c, std::span<const double> u,
           std::span<const double> pi, std::span<const double> v_in, SweepBuffers& buf, std::span<double> v_out) {
    const auto& k = kernels::active();
    k.edge_prices(pi.data(), graph.edge_sellers().data(), graph.edge_buyers().data(), v_in.data(), buf.p.data(),
                  graph.num_edges());
    kernels::segment_max(buf.p, graph.out_offsets(), buf.best, buf.best_edge);
    k.value_update(c.data(), u.data(), buf.best.data(), v_out.data(), graph.num_nodes());
}

namespace {

void check_state(const LatentState& s, const TradingGraph& g) {
    if (s.c.size() != g.num_nodes() || s.u.size() != g.num_nodes() || s.pi.size() != g.num_edges())
        throw ConfigError("latent state does not cover the graph's nodes and edges");
}

void check_finite(const TradingGraph& g, std::span<const double> v, int iteration) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            const auto k = g.node_key(i);
            throw NumericError("non-finite dealer value at node (dealer " + std::to_string(k.dealer) + ", asset " +
                               std::to_string(k.asset) + ", day " + std::to_string(k.day) + ") in iteration " +
                               std::to_string(iteration));
        }
    }
}

}  // namespace

std::vector<double> apply_T(const LatentState& state, const TradingGraph& graph, std::span<const double> v) {
    check_state(state, graph);
    if (v.size() != graph.num_nodes()) throw ConfigError("value vector does not cover the graph's nodes");
    SweepBuffers buf(graph);
    std::vector<double> out(graph.num_nodes());
    sweep(graph, state.c, state.u, state.pi, v, buf, out);
    return out;
}

EquilibriumSolution solve_fixed_point(const LatentState& state, const TradingGraph& graph,
                                      const SolveSettings& settings, std::optional<std::span<const double>> v0) {
    settings.validate();
    check_state(state, graph);
    const auto n = graph.num_nodes();

    std::vector<double> v(n);
    if (v0) {
        if (v0->size() != n) throw ConfigError("initial values do not cover the graph's nodes");
        v.assign(v0->begin(), v0->end());
    } else {
        for (std::size_t i = 0; i < n; ++i) v[i] = -state.c[i] + state.u[i];
    }
    check_finite(graph, v, 0);

    EquilibriumSolution sol;
    if (settings.record_history) sol.history.push_back(v);
    SweepBuffers buf(graph);
    std::vector<double> next(n);
    const auto& k = kernels::active();
    for (int it = 1; it <= settings.max_iters; ++it) {
        sweep(graph, state.c, state.u, state.pi, v, buf, next);
        check_finite(graph, next, it);
        sol.final_residual = k.max_abs_diff(next.data(), v.data(), n);
        v.swap(next);
        sol.iterations_used = it;
        if (settings.record_history) sol.history.push_back(v);
        if (settings.mode == SolveMode::ToTolerance && sol.final_residual < settings.tol) break;
    }

    sol.v = std::move(v);
    sol.p = std::move(buf.p);
    sol.outcome = realize_outcomes(graph, sol.p, state.u);
    sol.best_price.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        if (buf.best_edge[i] >= 0) sol.best_price[i] = buf.best[i];
    return sol;
}

std::vector<Outcome> realize_outcomes(const TradingGraph& graph, std::span<const double> p, std::span<const double> u) {
    if (p.size() != graph.num_edges() || u.size() != graph.num_nodes())
        throw ConfigError("price or customer-value vector does not match the graph");
    const auto n = graph.num_nodes();
    std::vector<double> best(n);
    std::vector<std::int32_t> arg(n);
    kernels::segment_max(p, graph.out_offsets(), best, arg);
    std::vector<Outcome> out(n);
    const auto edges = graph.edges();
    for (std::size_t i = 0; i < n; ++i) {
        if (arg[i] < 0) {
            out[i] = {OutcomeKind::Isolated, -1, -1, u[i]};
        } else if (best[i] > u[i]) {
            out[i] = {OutcomeKind::InterdealerSale, edges[arg[i]].buyer, arg[i], best[i]};
        } else {
            out[i] = {OutcomeKind::CustomerSale, -1, -1, u[i]};
        }
    }
    return out;
}

std::vector<ObservedTrade> observed_trades(const TradingGraph& graph, const std::vector<Outcome>& outcomes) {
    std::vector<ObservedTrade> out;
    const auto edges = graph.edges();
    for (const auto& o : outcomes)
        if (o.kind == OutcomeKind::InterdealerSale) out.push_back({edges[o.edge], o.price});
    return out;
}

}  // namespace otcnet
