#include "otcnet/market/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "otcnet/core/error.hpp"

namespace otcnet {

namespace {

std::string edge_str(const EdgeKey& e) {
    return "(seller " + std::to_string(e.seller) + ", buyer " + std::to_string(e.buyer) + ", asset " +
           std::to_string(e.asset) + ", day " + std::to_string(e.day) + ")";
}

}  // namespace

TradingGraph::TradingGraph(Dims dims, std::vector<EdgeKey> edges, FeatureTable features)
    : dims_(dims), features_(std::move(features)) {
    if (dims_.dealers <= 0 || dims_.assets <= 0 || dims_.days <= 0)
        throw SchemaError("graph dimensions must be positive");
    const auto de = static_cast<std::size_t>(features_.dims.e);
    if (features_.e.size() != edges.size() * de)
        throw SchemaError("edge feature table has " + std::to_string(features_.e.size()) + " values, expected " +
                          std::to_string(edges.size() * de));

    for (const auto& e : edges) {
        if (e.seller < 0 || e.seller >= dims_.dealers || e.buyer < 0 || e.buyer >= dims_.dealers ||
            e.asset < 0 || e.asset >= dims_.assets || e.day < 0 || e.day >= dims_.days)
            throw SchemaError("edge out of range " + edge_str(e));
        if (e.seller == e.buyer) throw SchemaError("self-loop " + edge_str(e));
    }

    auto sort_key = [this](const EdgeKey& e) {
        return std::pair{node_index({e.seller, e.asset, e.day}), e.buyer};
    };
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sort_key(edges[a]) < sort_key(edges[b]); });

    edges_.resize(edges.size());
    std::vector<double> e_sorted(features_.e.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        edges_[i] = edges[order[i]];
        std::copy_n(features_.e.begin() + order[i] * de, de, e_sorted.begin() + i * de);
    }
    features_.e = std::move(e_sorted);

    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] == edges_[i - 1]) throw SchemaError("duplicate edge " + edge_str(edges_[i]));

    edge_seller_.resize(edges_.size());
    edge_buyer_.resize(edges_.size());
    out_offsets_.assign(num_nodes() + 1, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        edge_seller_[i] = static_cast<std::uint32_t>(node_index({e.seller, e.asset, e.day}));
        edge_buyer_[i] = static_cast<std::uint32_t>(node_index({e.buyer, e.asset, e.day}));
        ++out_offsets_[edge_seller_[i] + 1];
    }
    std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
    validate();
}

NodeKey TradingGraph::node_key(std::size_t node) const {
    const int layer = static_cast<int>(node / dims_.dealers);
    return NodeKey{static_cast<int>(node % dims_.dealers), layer % dims_.assets, layer / dims_.assets};
}

std::ptrdiff_t TradingGraph::find_edge(const EdgeKey& k) const {
    if (k.seller < 0 || k.seller >= dims_.dealers || k.asset < 0 || k.asset >= dims_.assets || k.day < 0 ||
        k.day >= dims_.days)
        return -1;
    const auto s = node_index({k.seller, k.asset, k.day});
    auto first = edges_.begin() + out_offsets_[s];
    auto last = edges_.begin() + out_offsets_[s + 1];
    auto it = std::lower_bound(first, last, k.buyer, [](const EdgeKey& e, int b) { return e.buyer < b; });
    if (it != last && it->buyer == k.buyer) return it - edges_.begin();
    return -1;
}

std::vector<NodeKey> TradingGraph::adjacency(const NodeKey& seller) const {
    const auto s = node_index(seller);
    std::vector<NodeKey> out;
    for (auto e = out_offsets_[s]; e < out_offsets_[s + 1]; ++e)
        out.push_back({edges_[e].buyer, seller.asset, seller.day});
    return out;
}

std::span<const double> TradingGraph::x_row(std::size_t node) const {
    const auto d = static_cast<std::size_t>(features_.dims.x);
    return {features_.x.data() + static_cast<std::size_t>(layer_of_node(node)) * d, d};
}

std::span<const double> TradingGraph::y_row(std::size_t node) const {
    const auto d = static_cast<std::size_t>(features_.dims.y);
    const auto k = node_key(node);
    return {features_.y.data() + dealer_day_index(k.dealer, k.day) * d, d};
}

std::span<const double> TradingGraph::z_row(std::size_t node) const {
    const auto d = static_cast<std::size_t>(features_.dims.z);
    if (d == 0) return {};
    const auto k = node_key(node);
    return {features_.z.data() + dealer_day_index(k.dealer, k.day) * d, d};
}

std::span<const double> TradingGraph::e_row(std::size_t edge) const {
    const auto d = static_cast<std::size_t>(features_.dims.e);
    return {features_.e.data() + edge * d, d};
}

void TradingGraph::validate() const {
    const auto& f = features_;
    const auto dealer_days = static_cast<std::size_t>(dims_.dealers) * dims_.days;
    if (f.dims.x < 0 || f.dims.y < 0 || f.dims.e < 0 || f.dims.z < 0)
        throw SchemaError("feature dimensions must be nonnegative");
    if (f.x.size() != static_cast<std::size_t>(dims_.layers()) * f.dims.x)
        throw SchemaError("asset feature table X has wrong size");
    if (f.y.size() != dealer_days * f.dims.y) throw SchemaError("dealer feature table Y has wrong size");
    if (f.z.size() != dealer_days * f.dims.z) throw SchemaError("dealer-customer feature table Z has wrong size");
    if (f.e.size() != edges_.size() * f.dims.e) throw SchemaError("relationship feature table E has wrong size");
    if (f.u.size() != num_nodes()) throw SchemaError("customer value table u has wrong size");
    for (std::size_t i = 0; i < f.u.size(); ++i)
        if (!(f.u[i] > 0.0))
            throw SchemaError("customer value must be positive at node " + std::to_string(i));
}

}  // namespace otcnet
