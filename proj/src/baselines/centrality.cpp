#include "otcnet/baselines/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "otcnet/core/error.hpp"

namespace otcnet {

std::vector<std::vector<int>> LayerGraph::undirected() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [s, b] : arcs) {
        adj[s].push_back(b);
        adj[b].push_back(s);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

LayerGraph layer_graph(const TradingGraph& graph, int asset, int day) {
    LayerGraph g;
    g.n = graph.dims().dealers;
    for (const auto& e : graph.edges())
        if (e.asset == asset && e.day == day) g.arcs.emplace_back(e.seller, e.buyer);
    return g;
}

namespace {

void require_two(const LayerGraph& g) {
    if (g.n < 2) throw ConfigError("degree centrality needs at least 2 dealers, got " + std::to_string(g.n));
}

std::vector<double> directed_degree(const LayerGraph& g, bool out) {
    require_two(g);
    std::vector<std::vector<int>> nb(g.n);
    for (auto [s, b] : g.arcs) (out ? nb[s] : nb[b]).push_back(out ? b : s);
    std::vector<double> c(g.n);
    for (int i = 0; i < g.n; ++i) {
        std::sort(nb[i].begin(), nb[i].end());
        const auto distinct = std::unique(nb[i].begin(), nb[i].end()) - nb[i].begin();
        c[i] = static_cast<double>(distinct) / (g.n - 1);
    }
    return c;
}

}  // namespace

std::vector<double> degree_centrality(const LayerGraph& g) {
    require_two(g);
    const auto adj = g.undirected();
    std::vector<double> c(g.n);
    for (int i = 0; i < g.n; ++i) c[i] = static_cast<double>(adj[i].size()) / (g.n - 1);
    return c;
}

std::vector<double> out_degree_centrality(const LayerGraph& g) { return directed_degree(g, true); }
std::vector<double> in_degree_centrality(const LayerGraph& g) { return directed_degree(g, false); }

std::vector<double> eigenvector_centrality(const LayerGraph& g, double tol, int max_iter) {
    if (g.n < 1) throw ConfigError("eigenvector centrality needs a nonempty layer");
    const auto adj = g.undirected();
    std::vector<double> out(g.n, 0.0);
    std::vector<int> comp(g.n, -1);

    for (int root = 0; root < g.n; ++root) {
        if (comp[root] >= 0 || adj[root].empty()) continue;
        std::vector<int> members{root};
        comp[root] = root;
        for (std::size_t h = 0; h < members.size(); ++h)
            for (int nb : adj[members[h]])
                if (comp[nb] < 0) {
                    comp[nb] = root;
                    members.push_back(nb);
                }
        std::sort(members.begin(), members.end());

        const double start = 1.0 / std::sqrt(static_cast<double>(members.size()));
        std::vector<double> x(g.n, 0.0), y(g.n, 0.0);
        for (int i : members) x[i] = start;
        bool converged = false;
        for (int it = 0; it < max_iter && !converged; ++it) {
            double norm = 0.0;
            for (int i : members) {
                double s = x[i];
                for (int nb : adj[i]) s += x[nb];
                y[i] = s;
                norm += s * s;
            }
            norm = std::sqrt(norm);
            double diff = 0.0;
            for (int i : members) {
                y[i] /= norm;
                diff = std::max(diff, std::fabs(y[i] - x[i]));
            }
            std::swap(x, y);
            converged = diff < tol;
        }
        if (!converged)
            throw NumericError("eigenvector centrality did not converge in " + std::to_string(max_iter) +
                               " iterations");
        for (int i : members) out[i] = x[i];
    }

    const double mx = *std::max_element(out.begin(), out.end());
    if (mx > 0)
        for (auto& v : out) v /= mx;
    return out;
}

std::vector<double> betweenness_centrality(const LayerGraph& g) {
    const int n = g.n;
    std::vector<double> cb(n, 0.0);
    if (n < 3) return cb;
    const auto adj = g.undirected();

    std::vector<int> stack, dist(n);
    std::vector<std::vector<int>> pred(n);
    std::vector<double> sigma(n), delta(n);
    for (int s = 0; s < n; ++s) {
        stack.clear();
        for (int i = 0; i < n; ++i) {
            pred[i].clear();
            dist[i] = -1;
            sigma[i] = 0.0;
            delta[i] = 0.0;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            stack.push_back(v);
            for (int w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        while (!stack.empty()) {
            const int w = stack.back();
            stack.pop_back();
            for (int v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) cb[w] += delta[w];
        }
    }
    // Each unordered pair is counted from both endpoints.
    const double pairs = (n - 1.0) * (n - 2.0) / 2.0;
    for (auto& v : cb) v = v / 2.0 / pairs;
    return cb;
}

CentralityTable compute_centralities(const TradingGraph& graph) {
    const auto n = graph.num_nodes();
    CentralityTable t;
    t.degree.resize(n);
    t.in_degree.resize(n);
    t.out_degree.resize(n);
    t.eigenvector.resize(n);
    t.betweenness.resize(n);
    const auto& d = graph.dims();
    for (int day = 0; day < d.days; ++day) {
        for (int asset = 0; asset < d.assets; ++asset) {
            const auto lg = layer_graph(graph, asset, day);
            const auto deg = degree_centrality(lg);
            const auto in = in_degree_centrality(lg);
            const auto out = out_degree_centrality(lg);
            const auto eig = eigenvector_centrality(lg);
            const auto btw = betweenness_centrality(lg);
            for (int i = 0; i < d.dealers; ++i) {
                const auto node = graph.node_index({i, asset, day});
                t.degree[node] = deg[i];
                t.in_degree[node] = in[i];
                t.out_degree[node] = out[i];
                t.eigenvector[node] = eig[i];
                t.betweenness[node] = btw[i];
            }
        }
    }
    return t;
}

}  // namespace otcnet
