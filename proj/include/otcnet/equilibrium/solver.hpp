#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "otcnet/equilibrium/latent.hpp"
#include "otcnet/market/graph.hpp"
#include "otcnet/market/io.hpp"

namespace otcnet {

enum class SolveMode {
    FixedIterations,  ///< exactly max_iters sweeps
    ToTolerance,      ///< stop once the sup-norm change drops below tol
};

struct SolveSettings {
    int max_iters = 100000;
    double tol = 1e-10;
    SolveMode mode = SolveMode::ToTolerance;
    /// Keep every iterate v^(0..n) in EquilibriumSolution::history.
    bool record_history = false;

    static SolveSettings fixed(int iterations) { return {iterations, 0.0, SolveMode::FixedIterations, false}; }
    static SolveSettings to_tolerance(double tol = 1e-10, int max_iters = 100000) {
        return {max_iters, tol, SolveMode::ToTolerance, false};
    }
    void validate() const;
};

enum class OutcomeKind {
    InterdealerSale,  ///< best quote strictly above the customer value
    CustomerSale,     ///< best quote at or below the customer value
    Isolated,         ///< no buyers at all; sells to customers at u
};

struct Outcome {
    OutcomeKind kind = OutcomeKind::Isolated;
    int buyer = -1;            ///< buyer dealer id for interdealer sales
    std::int32_t edge = -1;    ///< edge index for interdealer sales
    double price = 0.0;
};

struct EquilibriumSolution {
    std::vector<double> v;                         ///< dealer values after the last sweep
    std::vector<double> p;                         ///< edge prices of the last sweep
    std::vector<std::optional<double>> best_price; ///< max p over out-edges
    std::vector<Outcome> outcome;
    int iterations_used = 0;
    double final_residual = 0.0;
    std::vector<std::vector<double>> history;      ///< v^(0..n) when requested
};

/// Scratch space for one synchronous sweep. Sized once per graph.
struct SweepBuffers {
    std::vector<double> p;
    std::vector<double> best;
    std::vector<std::int32_t> best_edge;
    explicit SweepBuffers(const TradingGraph& g) : p(g.num_edges()), best(g.num_nodes()), best_edge(g.num_nodes()) {}
};

/// One round of message passing: prices from v_in, each seller's best quote,
/// then v_out = -c + max(u, best). This is the operator T.
void sweep(const TradingGraph& graph, std::span<const double> c, std::span<const double> u,
           std::span<const double> pi, std::span<const double> v_in, SweepBuffers& buf, std::span<double> v_out);

/// T(v) componentwise; sellers without buyers get u - c.
std::vector<double> apply_T(const LatentState& state, const TradingGraph& graph, std::span<const double> v);

/// Iterates v <- T(v) from v0 (default u - c). Prices, best quotes and outcomes
/// are those of the final sweep, i.e. quoted against the previous iterate;
/// in to-tolerance mode they differ from prices at the returned v by < tol.
EquilibriumSolution solve_fixed_point(const LatentState& state, const TradingGraph& graph,
                                      const SolveSettings& settings,
                                      std::optional<std::span<const double>> v0 = std::nullopt);

/// Outcome of every seller given prices and customer values. Interdealer sale
/// iff the best quote is strictly above u; argmax ties go to the lowest buyer id.
std::vector<Outcome> realize_outcomes(const TradingGraph& graph, std::span<const double> p, std::span<const double> u);

/// Interdealer sales as observable trades, in node order.
std::vector<ObservedTrade> observed_trades(const TradingGraph& graph, const std::vector<Outcome>& outcomes);

}  // namespace otcnet
