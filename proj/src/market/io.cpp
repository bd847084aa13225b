#include "otcnet/market/io.hpp"

#include <algorithm>
#include <fstream>
#include <string>
#include <tuple>

#include "otcnet/core/csv.hpp"
#include "otcnet/core/error.hpp"

namespace otcnet {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

/// Number of consecutive columns prefix_1, prefix_2, ... in the header.
int count_prefixed(const csv::Table& t, const std::string& prefix) {
    int n = 0;
    while (t.find_column(prefix + "_" + std::to_string(n + 1))) ++n;
    return n;
}

std::vector<std::size_t> prefixed_columns(const csv::Table& t, const std::string& prefix, int n) {
    std::vector<std::size_t> cols;
    for (int i = 1; i <= n; ++i) cols.push_back(t.column(prefix + "_" + std::to_string(i)));
    return cols;
}

int get_id(const csv::Table& t, std::size_t row, std::size_t col) {
    const long long v = t.get_int(row, col);
    if (v < 0 || v > 1'000'000) throw ParseError(t.source(), t.line_of(row), t.header()[col], "id out of range");
    return static_cast<int>(v);
}

}  // namespace

void save_graph(const TradingGraph& graph, const fs::path& dir, const GraphTruth* truth) {
    const auto& f = graph.features();
    const auto& fd = f.dims;
    if (truth) {
        if (truth->c.size() != graph.num_nodes() || truth->v.size() != graph.num_nodes() ||
            truth->pi.size() != graph.num_edges() || truth->p.size() != graph.num_edges())
            throw SchemaError("truth columns do not match graph size");
    }
    {
        auto out = open_out(dir / kNodesFile);
        csv::Writer w(out);
        w.field("dealer").field("asset").field("day").field("u");
        for (int i = 1; i <= fd.x; ++i) w.field("X_" + std::to_string(i));
        for (int i = 1; i <= fd.y; ++i) w.field("Y_" + std::to_string(i));
        for (int i = 1; i <= fd.z; ++i) w.field("Z_" + std::to_string(i));
        if (truth) w.field("c").field("v");
        w.end_row();
        for (std::size_t n = 0; n < graph.num_nodes(); ++n) {
            const auto k = graph.node_key(n);
            w.field(k.dealer).field(k.asset).field(k.day).field(f.u[n]);
            for (double x : graph.x_row(n)) w.field(x);
            for (double y : graph.y_row(n)) w.field(y);
            for (double z : graph.z_row(n)) w.field(z);
            if (truth) w.field(truth->c[n]).field(truth->v[n]);
            w.end_row();
        }
    }
    {
        auto out = open_out(dir / kEdgesFile);
        csv::Writer w(out);
        w.field("seller").field("buyer").field("asset").field("day");
        for (int i = 1; i <= fd.e; ++i) w.field("E_" + std::to_string(i));
        if (truth) w.field("pi").field("p");
        w.end_row();
        const auto edges = graph.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            w.field(edges[e].seller).field(edges[e].buyer).field(edges[e].asset).field(edges[e].day);
            for (double x : graph.e_row(e)) w.field(x);
            if (truth) w.field(truth->pi[e]).field(truth->p[e]);
            w.end_row();
        }
    }
}

TradingGraph load_graph(const fs::path& dir, GraphTruth* truth) {
    const auto nodes = csv::Table::read(dir / kNodesFile);
    const auto edges_t = csv::Table::read(dir / kEdgesFile);

    const auto c_dealer = nodes.column("dealer");
    const auto c_asset = nodes.column("asset");
    const auto c_day = nodes.column("day");
    const auto c_u = nodes.column("u");
    FeatureDims fd;
    fd.x = count_prefixed(nodes, "X");
    fd.y = count_prefixed(nodes, "Y");
    fd.z = count_prefixed(nodes, "Z");
    fd.e = count_prefixed(edges_t, "E");
    if (fd.x == 0) nodes.column("X_1");
    if (fd.y == 0) nodes.column("Y_1");
    if (fd.e == 0) edges_t.column("E_1");
    const auto x_cols = prefixed_columns(nodes, "X", fd.x);
    const auto y_cols = prefixed_columns(nodes, "Y", fd.y);
    const auto z_cols = prefixed_columns(nodes, "Z", fd.z);
    const auto e_cols = prefixed_columns(edges_t, "E", fd.e);

    Dims dims{0, 0, 0};
    for (std::size_t r = 0; r < nodes.rows(); ++r) {
        dims.dealers = std::max(dims.dealers, get_id(nodes, r, c_dealer) + 1);
        dims.assets = std::max(dims.assets, get_id(nodes, r, c_asset) + 1);
        dims.days = std::max(dims.days, get_id(nodes, r, c_day) + 1);
    }
    if (nodes.rows() == 0 || nodes.rows() != dims.nodes())
        throw SchemaError(nodes.source() + ": expected one row per (dealer, asset, day); found " +
                          std::to_string(nodes.rows()) + " rows for dims " + std::to_string(dims.dealers) + "x" +
                          std::to_string(dims.assets) + "x" + std::to_string(dims.days));

    FeatureTable f;
    f.dims = fd;
    const std::size_t dealer_days = static_cast<std::size_t>(dims.dealers) * dims.days;
    f.x.assign(static_cast<std::size_t>(dims.layers()) * fd.x, 0.0);
    f.y.assign(dealer_days * fd.y, 0.0);
    f.z.assign(dealer_days * fd.z, 0.0);
    f.u.assign(dims.nodes(), 0.0);
    std::vector<char> seen(dims.nodes(), 0);
    std::vector<char> x_set(dims.layers(), 0), y_set(dealer_days, 0);

    const auto opt_c = nodes.find_column("c");
    const auto opt_v = nodes.find_column("v");
    const bool node_truth = truth && opt_c && opt_v;
    if (truth) *truth = GraphTruth{};
    if (node_truth) {
        truth->c.assign(dims.nodes(), 0.0);
        truth->v.assign(dims.nodes(), 0.0);
    }

    // Shared rows (X per layer, Y/Z per dealer-day) must agree across the nodes that repeat them.
    auto put_shared = [&](std::vector<double>& dst, std::size_t row_idx, int d, const std::vector<std::size_t>& cols,
                          std::vector<char>* set_flags, std::size_t r) {
        for (int i = 0; i < d; ++i) {
            const double val = nodes.get_double(r, cols[i]);
            double& slot = dst[row_idx * d + i];
            if (set_flags && (*set_flags)[row_idx] && slot != val)
                throw ParseError(nodes.source(), nodes.line_of(r), nodes.header()[cols[i]],
                                 "value disagrees with another row of the same entity");
            slot = val;
        }
        if (set_flags) (*set_flags)[row_idx] = 1;
    };

    std::vector<char> z_set(dealer_days, 0);
    for (std::size_t r = 0; r < nodes.rows(); ++r) {
        const NodeKey k{get_id(nodes, r, c_dealer), get_id(nodes, r, c_asset), get_id(nodes, r, c_day)};
        const auto layer = static_cast<std::size_t>(k.day) * dims.assets + k.asset;
        const auto n = layer * dims.dealers + k.dealer;
        if (seen[n]) throw ParseError(nodes.source(), nodes.line_of(r), "dealer", "duplicate node");
        seen[n] = 1;
        f.u[n] = nodes.get_double(r, c_u);
        if (!(f.u[n] > 0.0)) throw ParseError(nodes.source(), nodes.line_of(r), "u", "customer value must be positive");
        put_shared(f.x, layer, fd.x, x_cols, &x_set, r);
        const auto dd = static_cast<std::size_t>(k.day) * dims.dealers + k.dealer;
        put_shared(f.y, dd, fd.y, y_cols, &y_set, r);
        put_shared(f.z, dd, fd.z, z_cols, &z_set, r);
        if (node_truth) {
            truth->c[n] = nodes.get_double(r, *opt_c);
            truth->v[n] = nodes.get_double(r, *opt_v);
        }
    }

    const auto c_seller = edges_t.column("seller");
    const auto c_buyer = edges_t.column("buyer");
    const auto ce_asset = edges_t.column("asset");
    const auto ce_day = edges_t.column("day");
    const auto opt_pi = edges_t.find_column("pi");
    const auto opt_p = edges_t.find_column("p");
    const bool edge_truth = node_truth && opt_pi && opt_p;

    struct Row {
        EdgeKey key;
        std::size_t row;
    };
    std::vector<Row> rows;
    rows.reserve(edges_t.rows());
    for (std::size_t r = 0; r < edges_t.rows(); ++r) {
        EdgeKey e{get_id(edges_t, r, c_seller), get_id(edges_t, r, c_buyer), get_id(edges_t, r, ce_asset),
                  get_id(edges_t, r, ce_day)};
        if (e.seller == e.buyer) throw ParseError(edges_t.source(), edges_t.line_of(r), "buyer", "self-loop");
        if (e.seller >= dims.dealers || e.buyer >= dims.dealers || e.asset >= dims.assets || e.day >= dims.days)
            throw ParseError(edges_t.source(), edges_t.line_of(r), "seller", "id outside node table dimensions");
        rows.push_back({e, r});
    }
    // Graph edge order: (day, asset, seller, buyer). Sorting here keeps the
    // truth columns aligned with the graph's internal order.
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.key.day, a.key.asset, a.key.seller, a.key.buyer) <
               std::tie(b.key.day, b.key.asset, b.key.seller, b.key.buyer);
    });

    std::vector<EdgeKey> edges;
    edges.reserve(rows.size());
    f.e.reserve(rows.size() * fd.e);
    if (edge_truth) {
        truth->pi.reserve(rows.size());
        truth->p.reserve(rows.size());
    }
    for (const auto& [key, r] : rows) {
        edges.push_back(key);
        for (auto col : e_cols) f.e.push_back(edges_t.get_double(r, col));
        if (edge_truth) {
            truth->pi.push_back(edges_t.get_double(r, *opt_pi));
            truth->p.push_back(edges_t.get_double(r, *opt_p));
        }
    }
    return TradingGraph(dims, std::move(edges), std::move(f));
}

void save_observed(const std::vector<ObservedTrade>& trades, const fs::path& path) {
    auto out = open_out(path);
    csv::Writer w(out);
    w.row({"seller", "buyer", "asset", "day", "price"});
    for (const auto& t : trades) {
        w.field(t.edge.seller).field(t.edge.buyer).field(t.edge.asset).field(t.edge.day).field(t.price);
        w.end_row();
    }
}

std::vector<ObservedTrade> load_observed(const fs::path& path, const TradingGraph& graph) {
    const auto t = csv::Table::read(path);
    const auto cs = t.column("seller"), cb = t.column("buyer"), ca = t.column("asset"), cd = t.column("day"),
               cp = t.column("price");
    std::vector<ObservedTrade> out;
    std::vector<char> seller_seen(graph.num_nodes(), 0);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        ObservedTrade o{{get_id(t, r, cs), get_id(t, r, cb), get_id(t, r, ca), get_id(t, r, cd)}, t.get_double(r, cp)};
        if (o.edge.seller == o.edge.buyer) throw ParseError(t.source(), t.line_of(r), "buyer", "self-loop");
        if (graph.find_edge(o.edge) < 0)
            throw ParseError(t.source(), t.line_of(r), "seller", "trade is not on an edge of the graph");
        const auto s = graph.node_index({o.edge.seller, o.edge.asset, o.edge.day});
        if (seller_seen[s]) throw ParseError(t.source(), t.line_of(r), "seller", "seller observed twice in one layer");
        seller_seen[s] = 1;
        out.push_back(o);
    }
    return out;
}

}  // namespace otcnet
