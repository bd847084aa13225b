#include "otcnet/equilibrium/synthetic.hpp"

namespace otcnet {

SyntheticMarket generate_market(const GenConfig& config, int rounds, bool record_history) {
    SyntheticMarket m{config, generate_graph(config), {}, {}, {}};
    Rng cost_rng = make_stream(config.seed, "latent.cost");
    Rng pi_rng = make_stream(config.seed, "latent.pi");
    m.truth.c = gen_costs(m.graph, config.truth.beta_x, config.truth.beta_y, config.noise.sigma_c, cost_rng);
    m.truth.pi = gen_bargaining(m.graph, config.truth.eta, config.noise.sigma_pi, pi_rng);
    m.truth.u = m.graph.features().u;

    auto settings = SolveSettings::fixed(rounds);
    settings.record_history = record_history;
    m.solution = solve_fixed_point(m.truth, m.graph, settings);
    m.observed = observed_trades(m.graph, m.solution.outcome);
    return m;
}

}  // namespace otcnet
