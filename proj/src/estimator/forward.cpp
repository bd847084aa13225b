#include "otcnet/estimator/forward.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "otcnet/core/error.hpp"
#include "otcnet/equilibrium/latent.hpp"
#include "otcnet/equilibrium/solver.hpp"

namespace otcnet {

std::vector<Observation> make_observations(const TradingGraph& graph, const std::vector<ObservedTrade>& trades) {
    std::vector<Observation> out;
    out.reserve(trades.size());
    for (const auto& t : trades) {
        const auto node = graph.node_index({t.edge.seller, t.edge.asset, t.edge.day});
        if (graph.out_degree(node) == 0)
            throw DataError("observed seller (dealer " + std::to_string(t.edge.seller) + ", asset " +
                            std::to_string(t.edge.asset) + ", day " + std::to_string(t.edge.day) +
                            ") has no buyers in the graph");
        out.push_back({node, t.price, 1.0});
    }
    return out;
}

ForwardTrace forward(const TradingGraph& graph, const ModelParams& params, int rounds) {
    if (rounds < 1) throw ConfigError("number of message-passing rounds must be at least 1");
    const auto latents = latents_from_params(graph, params);
    const auto n = graph.num_nodes();

    ForwardTrace t;
    t.rounds = rounds;
    t.c = latents.c;
    t.pi = latents.pi;
    const auto& u = latents.u;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(t.c[i]))
            throw NumericError("non-finite holding cost at node " + std::to_string(i));
    }

    t.v_layers.assign(rounds + 1, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) t.v_layers[0][i] = -t.c[i] + u[i];
    t.best_edge.assign(rounds, std::vector<std::int32_t>(n));
    t.took_interdealer.assign(rounds, std::vector<std::uint8_t>(n));

    SweepBuffers buf(graph);
    for (int l = 1; l <= rounds; ++l) {
        sweep(graph, t.c, u, t.pi, t.v_layers[l - 1], buf, t.v_layers[l]);
        auto& be = t.best_edge[l - 1];
        auto& ti = t.took_interdealer[l - 1];
        for (std::size_t i = 0; i < n; ++i) {
            be[i] = buf.best_edge[i];
            ti[i] = (buf.best_edge[i] >= 0 && buf.best[i] > u[i]) ? 1 : 0;
            if (!std::isfinite(t.v_layers[l][i]))
                throw NumericError("non-finite dealer value at node " + std::to_string(i) + " in round " +
                                   std::to_string(l));
        }
    }
    t.p_final = buf.p;
    t.pred_best.assign(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i)
        if (buf.best_edge[i] >= 0) t.pred_best[i] = buf.best[i];
    return t;
}

double weighted_mse(const ForwardTrace& trace, const std::vector<Observation>& observed) {
    if (observed.empty()) throw DataError("observed price set is empty");
    double sw = 0.0, acc = 0.0;
    for (const auto& o : observed) {
        const double r = trace.pred_best[o.node] - o.price;
        acc += o.weight * r * r;
        sw += o.weight;
    }
    if (!(sw > 0)) throw DataError("observed price weights sum to zero");
    return acc / sw;
}

double loss(const ForwardTrace& trace, const std::vector<Observation>& observed, const ModelParams& params,
            double lambda) {
    double reg = 0.0;
    if (lambda != 0.0)
        for (double th : params.flatten()) reg += th * th;
    return weighted_mse(trace, observed) + lambda * reg;
}

}  // namespace otcnet
