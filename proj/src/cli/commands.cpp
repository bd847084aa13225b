#include "otcnet/cli/commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>

#include "otcnet/baselines/suite.hpp"
#include "otcnet/core/csv.hpp"
#include "otcnet/equilibrium/synthetic.hpp"
#include "otcnet/estimator/model_io.hpp"
#include "otcnet/inference/bootstrap.hpp"
#include "otcnet/inference/metrics.hpp"

namespace otcnet {

namespace fs = std::filesystem;
using nlohmann::json;

OutputLock::OutputLock(const fs::path& dir) : path_(dir / kLockFile) {
    fs::create_directories(dir);
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (f == nullptr)
        throw ConfigError("output directory " + dir.string() + " is locked by another run (remove " +
                          path_.string() + " if that run is gone)");
    std::fclose(f);
}

OutputLock::~OutputLock() {
    std::error_code ec;
    fs::remove(path_, ec);
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config: return 2;
        case ErrorKind::Data: return 3;
        case ErrorKind::Numeric: return 4;
    }
    return 1;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 15];
    while (in) {
        in.read(buf, sizeof(buf));
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s.push_back(hex[md[i] >> 4]);
        s.push_back(hex[md[i] & 15]);
    }
    return s;
}

namespace {

constexpr const char* kConfigFile = "config.json";
constexpr const char* kModelFile = "fitted_model.json";
constexpr int kHistogramBins = 20;

/// Writes `name` under `out` through `body` and records it.
void write_csv(const fs::path& out, const std::string& name, WrittenFiles& written,
               const std::function<void(csv::Writer&)>& body) {
    fs::create_directories(out);
    std::ofstream f(out / name, std::ios::binary);
    if (!f) throw DataError("cannot write " + (out / name).string());
    csv::Writer w(f);
    body(w);
    f.flush();
    if (!f) throw DataError("write failed for " + (out / name).string());
    written.push_back(name);
}

void write_json(const fs::path& out, const std::string& name, const json& j, WrittenFiles& written) {
    fs::create_directories(out);
    std::ofstream f(out / name, std::ios::binary);
    if (!f) throw DataError("cannot write " + (out / name).string());
    f << j.dump(2) << '\n';
    written.push_back(name);
}

void key_fields(csv::Writer& w, const NodeKey& k) { w.field(k.dealer).field(k.asset).field(k.day); }
void key_fields(csv::Writer& w, const EdgeKey& k) { w.field(k.seller).field(k.buyer).field(k.asset).field(k.day); }

struct LoadedData {
    TradingGraph graph;
    GraphTruth truth;
    std::vector<ObservedTrade> trades;
    std::vector<Observation> observed;
    bool has_truth() const { return !truth.c.empty() && !truth.pi.empty(); }
};

LoadedData load_data(const fs::path& data) {
    LoadedData d;
    d.graph = load_graph(data, &d.truth);
    d.trades = load_observed(data / kObservedFile, d.graph);
    d.observed = make_observations(d.graph, d.trades);
    return d;
}

std::vector<double> observed_prices(const std::vector<Observation>& obs) {
    std::vector<double> y;
    for (const auto& o : obs) y.push_back(o.price);
    return y;
}

std::vector<double> predictions_at(const std::vector<double>& pred_best, const std::vector<Observation>& obs) {
    std::vector<double> p;
    for (const auto& o : obs) p.push_back(pred_best[o.node]);
    return p;
}

// --- summary statistics -------------------------------------------------

void stats_row(csv::Writer& w, const std::string& panel, const std::string& variable, const std::vector<double>& xs) {
    w.field(panel).field(variable).field(xs.size());
    if (xs.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        w.field(nan).field(nan).field(nan).field(nan).end_row();
        return;
    }
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1))
                                    : std::numeric_limits<double>::quiet_NaN();
    w.field(*mn).field(*mx).field(mean).field(sd).end_row();
}

/// Column `j` of a per-node or per-edge feature, one value per node or edge.
std::vector<double> feature_column(const TradingGraph& g, char kind, int j) {
    std::vector<double> out;
    if (kind == 'E') {
        for (std::size_t e = 0; e < g.num_edges(); ++e) out.push_back(g.e_row(e)[j]);
        return out;
    }
    for (std::size_t n = 0; n < g.num_nodes(); ++n) out.push_back(kind == 'X' ? g.x_row(n)[j] : g.y_row(n)[j]);
    return out;
}

std::string feature_label(const std::string& base, int j, int d) {
    return d == 1 ? base : base + "_" + std::to_string(j + 1);
}

void write_summary_stats(const fs::path& out, const TradingGraph& g, const GraphTruth& truth,
                         const std::vector<ObservedTrade>& trades, WrittenFiles& written) {
    write_csv(out, "summary_stats.csv", written, [&](csv::Writer& w) {
        w.row({"panel", "variable", "N", "min", "max", "mean", "std"});
        const auto& fd = g.feature_dims();
        for (int j = 0; j < fd.x; ++j)
            stats_row(w, "observable", feature_label("Asset Feature X", j, fd.x), feature_column(g, 'X', j));
        for (int j = 0; j < fd.y; ++j)
            stats_row(w, "observable", feature_label("Dealer Feature Y", j, fd.y), feature_column(g, 'Y', j));
        for (int j = 0; j < fd.e; ++j)
            stats_row(w, "observable", feature_label("Relationship Feature E", j, fd.e), feature_column(g, 'E', j));
        stats_row(w, "observable", "Customer Values", g.features().u);
        std::vector<double> prices;
        for (const auto& t : trades) prices.push_back(t.price);
        stats_row(w, "observable", "Observed Prices", prices);
        if (!truth.c.empty()) {
            stats_row(w, "latent", "Dealer Values", truth.v);
            stats_row(w, "latent", "Bargaining Powers", truth.pi);
            stats_row(w, "latent", "Potential Transaction Prices", truth.p);
            stats_row(w, "latent", "Costs", truth.c);
        }
    });
}

// --- stage bodies ---------------------------------------------------------

struct TrainOutcome {
    FitResult fit;
    MetricsReport metrics;
};

TrainOutcome fit_structural(const LoadedData& d, const TrainConfig& tc) {
    TrainOutcome t;
    t.fit = train(d.graph, d.observed, tc);
    const auto pred = predictions_at(t.fit.pred_best, d.observed);
    t.metrics = evaluate_fit(pred, observed_prices(d.observed), static_cast<int>(t.fit.params.size()));
    return t;
}

/// Fitted parameters from `out` when a model file exists, else a fresh fit.
ModelParams point_estimate(const ExperimentConfig& config, const LoadedData& d, const fs::path& out) {
    if (fs::exists(out / kModelFile)) return load_model(out / kModelFile).params;
    return fit_structural(d, config.train).fit.params;
}

template <class Fn>
auto run_stage(const std::string& name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.kind(), "stage '" + name + "' failed: " + e.what());
    } catch (const fs::filesystem_error& e) {
        throw DataError("stage '" + name + "' failed: " + e.what());
    }
}

}  // namespace

WrittenFiles cmd_generate(const ExperimentConfig& config, const fs::path& out) {
    WrittenFiles written;
    const auto market = generate_market(config.gen, kGenerationRounds, config.emit_plots);
    const auto truth = market.truth_columns();
    save_graph(market.graph, out, &truth);
    written.push_back(kNodesFile);
    written.push_back(kEdgesFile);
    save_observed(market.observed, out / kObservedFile);
    written.push_back(kObservedFile);
    write_summary_stats(out, market.graph, truth, market.observed, written);

    if (config.emit_plots) {
        write_csv(out, "value_evolution.csv", written, [&](csv::Writer& w) {
            w.row({"iteration", "dealer", "asset", "day", "value"});
            const auto& hist = market.solution.history;
            for (std::size_t it = 0; it < hist.size(); ++it)
                for (std::size_t n = 0; n < hist[it].size(); ++n) {
                    w.field(it);
                    key_fields(w, market.graph.node_key(n));
                    w.field(hist[it][n]).end_row();
                }
        });
    }
    // The bundle should not depend on where it was written.
    auto resolved = experiment_to_json(config);
    resolved.erase("outputs");
    write_json(out, kConfigFile, resolved, written);
    return written;
}

WrittenFiles cmd_solve(const ExperimentConfig& config, const fs::path& data, const fs::path& out) {
    GraphTruth truth;
    const auto graph = load_graph(data, &truth);
    LatentState state;
    if (!truth.c.empty() && !truth.pi.empty()) {
        state = {truth.c, truth.pi, graph.features().u};
    } else {
        state = latents_from_params(graph, config.gen.truth);
    }
    const auto sol = solve_fixed_point(state, graph, SolveSettings::to_tolerance());

    WrittenFiles written;
    write_csv(out, "equilibrium_nodes.csv", written, [&](csv::Writer& w) {
        w.row({"dealer", "asset", "day", "c", "u", "v", "best_price", "outcome", "buyer", "price"});
        for (std::size_t n = 0; n < graph.num_nodes(); ++n) {
            key_fields(w, graph.node_key(n));
            w.field(state.c[n]).field(state.u[n]).field(sol.v[n]);
            if (sol.best_price[n]) w.field(*sol.best_price[n]);
            else w.field(std::string_view{});
            const auto& o = sol.outcome[n];
            w.field(o.kind == OutcomeKind::InterdealerSale ? "interdealer"
                    : o.kind == OutcomeKind::CustomerSale  ? "customer"
                                                           : "isolated");
            if (o.buyer >= 0) w.field(o.buyer);
            else w.field(std::string_view{});
            w.field(o.price).end_row();
        }
    });
    write_csv(out, "equilibrium_edges.csv", written, [&](csv::Writer& w) {
        w.row({"seller", "buyer", "asset", "day", "pi", "p"});
        const auto edges = graph.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            key_fields(w, edges[e]);
            w.field(state.pi[e]).field(sol.p[e]).end_row();
        }
    });
    write_json(out, "equilibrium.json",
               {{"iterations", sol.iterations_used},
                {"final_residual", sol.final_residual},
                {"contraction_epsilon", contraction_epsilon(state.pi)}},
               written);
    return written;
}

WrittenFiles cmd_train(const ExperimentConfig& config, const fs::path& data, const fs::path& out) {
    const auto d = load_data(data);
    const auto t = fit_structural(d, config.train);
    WrittenFiles written;

    FittedModel model{t.fit.params, config.train, t.metrics, t.fit.loss_trajectory.back()};
    fs::create_directories(out);
    save_model(model, out / kModelFile);
    written.push_back(kModelFile);

    write_csv(out, "loss.csv", written, [&](csv::Writer& w) {
        w.row({"epoch", "loss"});
        for (std::size_t e = 0; e < t.fit.loss_trajectory.size(); ++e)
            w.field(e + 1).field(t.fit.loss_trajectory[e]).end_row();
    });

    write_csv(out, "price_fit.csv", written, [&](csv::Writer& w) {
        w.row({"seller", "buyer", "asset", "day", "observed", "predicted"});
        for (std::size_t i = 0; i < d.trades.size(); ++i) {
            key_fields(w, d.trades[i].edge);
            w.field(d.trades[i].price).field(t.fit.pred_best[d.observed[i].node]).end_row();
        }
    });

    if (config.emit_plots) {
        const auto lat = predict_latents(d.graph, t.fit.params);
        const bool truth = d.has_truth();
        write_csv(out, "latent_nodes.csv", written, [&](csv::Writer& w) {
            if (truth) w.row({"dealer", "asset", "day", "c_true", "c_pred", "v_true", "v_pred"});
            else w.row({"dealer", "asset", "day", "c_pred", "v_pred"});
            for (std::size_t n = 0; n < d.graph.num_nodes(); ++n) {
                key_fields(w, d.graph.node_key(n));
                if (truth) w.field(d.truth.c[n]);
                w.field(lat.c[n]);
                if (truth) w.field(d.truth.v[n]);
                w.field(lat.v[n]).end_row();
            }
        });
        write_csv(out, "latent_edges.csv", written, [&](csv::Writer& w) {
            if (truth) w.row({"seller", "buyer", "asset", "day", "pi_true", "pi_pred", "p_true", "p_pred"});
            else w.row({"seller", "buyer", "asset", "day", "pi_pred", "p_pred"});
            const auto edges = d.graph.edges();
            for (std::size_t e = 0; e < edges.size(); ++e) {
                key_fields(w, edges[e]);
                if (truth) w.field(d.truth.pi[e]);
                w.field(lat.pi[e]);
                if (truth) w.field(d.truth.p[e]);
                w.field(lat.p[e]).end_row();
            }
        });
    }
    return written;
}

WrittenFiles cmd_bootstrap(const ExperimentConfig& config, const fs::path& data, const fs::path& out) {
    const auto d = load_data(data);
    const auto point = point_estimate(config, d, out);
    const auto result = bootstrap(d.graph, d.observed, config.train, config.bootstrap, &point);
    const auto names = point.names();
    WrittenFiles written;

    write_csv(out, "bootstrap_draws.csv", written, [&](csv::Writer& w) {
        std::vector<std::string> header{"replicate"};
        header.insert(header.end(), names.begin(), names.end());
        w.row(header);
        for (std::size_t i = 0; i < result.draws.size(); ++i) {
            w.field(result.replicate[i]);
            for (double x : result.draws[i].flatten()) w.field(x);
            w.end_row();
        }
    });

    const auto truth = config.gen.truth.flatten();
    const bool show_truth = d.has_truth() && truth.size() == names.size();
    const auto est = point.flatten();
    const auto& s = result.summary;
    write_csv(out, "bootstrap_summary.csv", written, [&](csv::Writer& w) {
        w.row({"param", "true", "estimate", "bootstrap_mean", "se", "ci_lower", "ci_upper", "replicates", "skipped"});
        for (std::size_t j = 0; j < names.size(); ++j) {
            w.field(names[j]);
            if (show_truth) w.field(truth[j]);
            else w.field(std::string_view{});
            w.field(est[j]).field(s.mean[j]).field(s.se[j]).field(s.ci_lower[j]).field(s.ci_upper[j]);
            w.field(result.draws.size()).field(result.diverged.size()).end_row();
        }
    });

    write_csv(out, "bootstrap_histogram.csv", written, [&](csv::Writer& w) {
        w.row({"param", "bin", "lower", "upper", "count"});
        for (std::size_t j = 0; j < names.size(); ++j) {
            std::vector<double> col;
            for (const auto& p : result.draws) col.push_back(p.flatten()[j]);
            const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
            const int bins = *mx > *mn ? kHistogramBins : 1;
            const double width = bins > 1 ? (*mx - *mn) / bins : 0.0;
            std::vector<int> count(bins, 0);
            for (double x : col) {
                int b = width > 0 ? static_cast<int>((x - *mn) / width) : 0;
                count[std::min(b, bins - 1)]++;
            }
            for (int b = 0; b < bins; ++b) {
                w.field(names[j]).field(b).field(*mn + b * width);
                w.field(b + 1 == bins ? *mx : *mn + (b + 1) * width).field(count[b]).end_row();
            }
        }
    });
    return written;
}

WrittenFiles cmd_compare(const ExperimentConfig& config, const fs::path& data, const fs::path& out) {
    const auto d = load_data(data);
    const auto params = point_estimate(config, d, out);
    const auto trace = forward(d.graph, params, config.train.rounds);
    const auto y = observed_prices(d.observed);
    const auto tgnn_pred = predictions_at(trace.pred_best, d.observed);
    const auto structural = evaluate_fit(tgnn_pred, y, static_cast<int>(params.size()));
    const auto suite = run_baseline_suite(d.graph, d.trades);
    WrittenFiles written;

    write_csv(out, "comparison.csv", written, [&](csv::Writer& w) {
        w.row({"model", "r2", "mae", "mse", "parameters", "log_likelihood", "aic", "bic"});
        for (const auto& r : comparison_rows(suite, structural)) {
            const auto& m = r.metrics;
            w.field(r.model).field(m.r2).field(m.mae).field(m.mse).field(m.n_params);
            w.field(m.log_likelihood).field(m.aic).field(m.bic).end_row();
        }
    });

    write_csv(out, "ols_coefficients.csv", written, [&](csv::Writer& w) {
        w.row({"model", "column", "coefficient", "dropped"});
        for (const auto& r : suite)
            for (std::size_t j = 0; j < r.columns.size(); ++j) {
                const bool dropped = std::find(r.dropped.begin(), r.dropped.end(), r.columns[j]) != r.dropped.end();
                w.field(regression_label(r.kind)).field(r.columns[j]).field(r.coefficients[j]);
                w.field(dropped ? 1 : 0).end_row();
            }
    });

    const auto best = std::max_element(suite.begin(), suite.end(), [](const auto& a, const auto& b) {
        return a.metrics.r2 < b.metrics.r2;
    });
    write_csv(out, "prediction_scatter.csv", written, [&](csv::Writer& w) {
        w.row({"seller", "buyer", "asset", "day", "observed", "tgnn", "best_ols", "best_ols_model"});
        for (std::size_t i = 0; i < d.trades.size(); ++i) {
            key_fields(w, d.trades[i].edge);
            w.field(y[i]).field(tgnn_pred[i]).field(best->fitted[i]).field(regression_label(best->kind)).end_row();
        }
    });
    return written;
}

WrittenFiles cmd_reproduce(const ExperimentConfig& config, const fs::path& out) {
    using clock = std::chrono::steady_clock;
    WrittenFiles all;
    json stages = json::array();
    auto stage = [&](const std::string& name, const std::function<WrittenFiles()>& body) {
        const auto t0 = clock::now();
        auto files = run_stage(name, body);
        const std::chrono::duration<double> dt = clock::now() - t0;
        stages.push_back({{"stage", name}, {"seconds", dt.count()}});
        all.insert(all.end(), files.begin(), files.end());
    };
    // A model file left by an earlier run would otherwise be reused as the point estimate.
    std::error_code ec;
    fs::remove(out / kModelFile, ec);

    stage("generate", [&] { return cmd_generate(config, out); });
    stage("train", [&] { return cmd_train(config, out, out); });
    stage("bootstrap", [&] { return cmd_bootstrap(config, out, out); });
    stage("compare", [&] { return cmd_compare(config, out, out); });

    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    json files = json::array();
    for (const auto& f : all)
        files.push_back({{"path", f.generic_string()},
                         {"bytes", fs::file_size(out / f)},
                         {"sha256", sha256_file(out / f)}});
    WrittenFiles written;
    write_json(out, kManifestFile,
               {{"preset", config.preset}, {"seed", config.seed}, {"files", files}, {"stages", stages}}, written);
    all.insert(all.end(), written.begin(), written.end());
    return all;
}

}  // namespace otcnet
