#include <algorithm>

#include "otcnet/core/error.hpp"
#include "otcnet/estimator/forward.hpp"
#include "otcnet/kernels/sweep.hpp"

namespace otcnet {

std::vector<double> Gradients::flatten() const {
    std::vector<double> out(d_beta_x);
    out.insert(out.end(), d_beta_y.begin(), d_beta_y.end());
    out.insert(out.end(), d_eta.begin(), d_eta.end());
    return out;
}

Gradients backward(const ForwardTrace& trace, const TradingGraph& graph, const std::vector<Observation>& observed,
                   const ModelParams& params, double lambda) {
    if (observed.empty()) throw DataError("observed price set is empty");
    const auto n = graph.num_nodes();
    const auto m = graph.num_edges();
    const int L = trace.rounds;
    const auto sellers = graph.edge_sellers();
    const auto buyers = graph.edge_buyers();
    const auto& k = kernels::active();

    double sw = 0.0;
    for (const auto& o : observed) sw += o.weight;

    // Adjoint of the final-sweep prices: each observed seller's residual flows
    // to the edge that carried its best quote.
    std::vector<double> g_p(m, 0.0), g_p_prev(m, 0.0);
    for (const auto& o : observed) {
        const auto e = trace.best_edge[L - 1][o.node];
        if (e < 0) throw DataError("observed seller has no buyers");
        g_p[e] += 2.0 * o.weight * (trace.pred_best[o.node] - o.price) / sw;
    }

    std::vector<double> g_c(n, 0.0), g_pi(m, 0.0), g_v(n);
    for (int l = L; l >= 1; --l) {
        const auto& v_prev = trace.v_layers[l - 1];
        k.edge_pi_adjoint(sellers.data(), buyers.data(), v_prev.data(), g_p.data(), g_pi.data(), m);
        std::fill(g_v.begin(), g_v.end(), 0.0);
        for (std::size_t e = 0; e < m; ++e) {
            g_v[sellers[e]] += trace.pi[e] * g_p[e];
            g_v[buyers[e]] += (1.0 - trace.pi[e]) * g_p[e];
        }
        // v^(l-1) = -c + (u or the best quote of sweep l-1); v^(0) = -c + u.
        for (std::size_t i = 0; i < n; ++i) g_c[i] -= g_v[i];
        if (l >= 2) {
            std::fill(g_p_prev.begin(), g_p_prev.end(), 0.0);
            const auto& be = trace.best_edge[l - 2];
            const auto& ti = trace.took_interdealer[l - 2];
            for (std::size_t i = 0; i < n; ++i)
                if (ti[i]) g_p_prev[be[i]] += g_v[i];
            g_p.swap(g_p_prev);
        }
    }

    Gradients g;
    g.d_beta_x.assign(params.beta_x.size(), 0.0);
    g.d_beta_y.assign(params.beta_y.size(), 0.0);
    g.d_eta.assign(params.eta.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double ga = g_c[i] * trace.c[i];  // dc/da = c for c = exp(a)
        const auto x = graph.x_row(i);
        const auto y = graph.y_row(i);
        for (std::size_t d = 0; d < x.size(); ++d) g.d_beta_x[d] += ga * x[d];
        for (std::size_t d = 0; d < y.size(); ++d) g.d_beta_y[d] += ga * y[d];
    }
    for (std::size_t e = 0; e < m; ++e) {
        const double gs = g_pi[e] * trace.pi[e] * (1.0 - trace.pi[e]);
        const auto row = graph.e_row(e);
        for (std::size_t d = 0; d < row.size(); ++d) g.d_eta[d] += gs * row[d];
    }
    if (lambda != 0.0) {
        for (std::size_t d = 0; d < g.d_beta_x.size(); ++d) g.d_beta_x[d] += 2.0 * lambda * params.beta_x[d];
        for (std::size_t d = 0; d < g.d_beta_y.size(); ++d) g.d_beta_y[d] += 2.0 * lambda * params.beta_y[d];
        for (std::size_t d = 0; d < g.d_eta.size(); ++d) g.d_eta[d] += 2.0 * lambda * params.eta[d];
    }
    return g;
}

}  // namespace otcnet
