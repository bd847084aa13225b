#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace otcnet {

/// Market dimensions: dealers N_i, assets N_k, days N_t.
struct Dims {
    int dealers = 0;
    int assets = 0;
    int days = 0;

    int layers() const { return assets * days; }
    std::size_t nodes() const { return static_cast<std::size_t>(dealers) * assets * days; }
    bool operator==(const Dims&) const = default;
};

struct FeatureDims {
    int x = 1;  ///< asset features per (asset, day)
    int y = 1;  ///< dealer features per (dealer, day)
    int e = 1;  ///< relationship features per edge
    int z = 0;  ///< dealer-customer features per (dealer, day); unused by the generators
    bool operator==(const FeatureDims&) const = default;
};

/// A (dealer, asset, day) triple.
struct NodeKey {
    int dealer = 0;
    int asset = 0;
    int day = 0;
    auto operator<=>(const NodeKey&) const = default;
};

/// Seller -> buyer link inside one (asset, day) layer.
struct EdgeKey {
    int seller = 0;
    int buyer = 0;
    int asset = 0;
    int day = 0;
    auto operator<=>(const EdgeKey&) const = default;
};

/// Feature storage, row-major, one row per entity.
///
/// X rows are indexed by layer (asset, day), Y and Z rows by (dealer, day),
/// E rows follow the graph's sorted edge order, u follows node order.
struct FeatureTable {
    FeatureDims dims;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> e;
    std::vector<double> u;
    std::vector<double> z;

    bool operator==(const FeatureTable&) const = default;
};

/// Layered directed trading network.
///
/// Node index = layer * N_i + dealer with layer = day * N_k + asset. Edges are
/// kept sorted by (seller node, buyer id), which makes every seller's
/// out-edges a contiguous range ordered by buyer id.
class TradingGraph {
  public:
    TradingGraph() = default;

    /// Validates and sorts `edges`; `features.e` must be aligned with the
    /// edges as passed and is permuted along with them.
    TradingGraph(Dims dims, std::vector<EdgeKey> edges, FeatureTable features);

    const Dims& dims() const { return dims_; }
    const FeatureDims& feature_dims() const { return features_.dims; }
    std::size_t num_nodes() const { return dims_.nodes(); }
    std::size_t num_edges() const { return edges_.size(); }
    int num_layers() const { return dims_.layers(); }

    std::size_t node_index(const NodeKey& k) const {
        return static_cast<std::size_t>(layer_index(k.asset, k.day)) * dims_.dealers + k.dealer;
    }
    NodeKey node_key(std::size_t node) const;
    int layer_index(int asset, int day) const { return day * dims_.assets + asset; }
    int layer_of_node(std::size_t node) const { return static_cast<int>(node / dims_.dealers); }
    std::size_t dealer_day_index(int dealer, int day) const {
        return static_cast<std::size_t>(day) * dims_.dealers + dealer;
    }

    std::span<const EdgeKey> edges() const { return edges_; }
    /// Node index of each edge's seller / buyer.
    std::span<const std::uint32_t> edge_sellers() const { return edge_seller_; }
    std::span<const std::uint32_t> edge_buyers() const { return edge_buyer_; }
    /// CSR offsets: out-edges of node i are [offsets[i], offsets[i+1]).
    std::span<const std::uint32_t> out_offsets() const { return out_offsets_; }
    std::size_t out_degree(std::size_t node) const { return out_offsets_[node + 1] - out_offsets_[node]; }
    /// Edge index for (seller, buyer) in a layer, or -1 when absent.
    std::ptrdiff_t find_edge(const EdgeKey& k) const;
    /// Buyer node keys of N(i), sorted by buyer id.
    std::vector<NodeKey> adjacency(const NodeKey& seller) const;

    const FeatureTable& features() const { return features_; }
    FeatureTable& mutable_features() { return features_; }

    std::span<const double> x_row(std::size_t node) const;
    std::span<const double> y_row(std::size_t node) const;
    std::span<const double> z_row(std::size_t node) const;
    std::span<const double> e_row(std::size_t edge) const;

    /// Checks internal consistency; throws SchemaError on violation.
    void validate() const;

    bool operator==(const TradingGraph& o) const {
        return dims_ == o.dims_ && edges_ == o.edges_ && features_ == o.features_;
    }

  private:
    Dims dims_;
    std::vector<EdgeKey> edges_;
    std::vector<std::uint32_t> edge_seller_;
    std::vector<std::uint32_t> edge_buyer_;
    std::vector<std::uint32_t> out_offsets_;
    FeatureTable features_;
};

}  // namespace otcnet
