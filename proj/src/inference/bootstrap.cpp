#include "otcnet/inference/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "otcnet/inference/metrics.hpp"

namespace otcnet {

void BootstrapConfig::validate() const {
    if (replicates < 2) throw ConfigError("bootstrap.replicates must be at least 2");
    if (!(alpha > 0 && alpha < 1)) throw ConfigError("bootstrap.alpha must be in (0, 1)");
    if (resample_size < 0) throw ConfigError("bootstrap.resample_size must be nonnegative");
    if (jobs < 1) throw ConfigError("jobs must be at least 1");
}

std::vector<double> resample_weights(std::size_t n_observed, int resample_size, Rng& rng) {
    if (n_observed == 0) throw DataError("cannot resample an empty observed set");
    std::vector<double> w(n_observed, 0.0);
    std::uniform_int_distribution<std::size_t> pick(0, n_observed - 1);
    const auto size = resample_size > 0 ? static_cast<std::size_t>(resample_size) : n_observed;
    for (std::size_t i = 0; i < size; ++i) w[pick(rng)] += 1.0;
    return w;
}

std::vector<Observation> resample_observed(const std::vector<Observation>& observed, int resample_size, Rng& rng) {
    const auto w = resample_weights(observed.size(), resample_size, rng);
    auto out = observed;
    for (std::size_t i = 0; i < out.size(); ++i) out[i].weight = w[i];
    return out;
}

ParamSummary summarize_draws(const std::vector<std::vector<double>>& draws, double alpha) {
    if (draws.empty()) throw NumericError("no bootstrap draws to summarize");
    const std::size_t k = draws.front().size();
    const double n = static_cast<double>(draws.size());
    ParamSummary s;
    s.mean.assign(k, 0.0);
    s.se.assign(k, 0.0);
    s.ci_lower.resize(k);
    s.ci_upper.resize(k);
    std::vector<double> col(draws.size());
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t b = 0; b < draws.size(); ++b) col[b] = draws[b][j];
        double mean = 0.0;
        for (double x : col) mean += x;
        mean /= n;
        double ss = 0.0;
        for (double x : col) ss += (x - mean) * (x - mean);
        s.mean[j] = mean;
        s.se[j] = draws.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        std::sort(col.begin(), col.end());
        s.ci_lower[j] = percentile(col, alpha / 2.0);
        s.ci_upper[j] = percentile(col, 1.0 - alpha / 2.0);
    }
    return s;
}

BootstrapResult bootstrap(const TradingGraph& graph, const std::vector<Observation>& observed,
                          const TrainConfig& train_config, const BootstrapConfig& config,
                          const ModelParams* point_estimate) {
    config.validate();
    train_config.validate();
    if (observed.empty()) throw DataError("cannot bootstrap an empty observed price set");
    if (config.warm_start && point_estimate == nullptr)
        throw ConfigError("bootstrap warm start needs a point estimate");
    const int size = config.resample_size > 0 ? config.resample_size : static_cast<int>(observed.size());
    const int total = config.replicates;

    std::vector<std::optional<ModelParams>> slots(total);
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr failure;

    auto worker = [&] {
        for (int b = next.fetch_add(1); b < total; b = next.fetch_add(1)) {
            try {
                Rng rng = make_stream(config.seed, "boot.resample", static_cast<std::uint64_t>(b));
                const auto sample = resample_observed(observed, size, rng);
                TrainConfig tc = train_config;
                tc.seed = derive_seed(config.seed, "boot.init", static_cast<std::uint64_t>(b));
                if (config.warm_start) tc.initial = *point_estimate;
                else tc.initial.reset();
                slots[b] = train(graph, sample, tc).params;
            } catch (const DivergenceError&) {
                slots[b].reset();
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const int jobs = std::min(config.jobs, total);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    BootstrapResult r;
    std::vector<std::vector<double>> flat;
    for (int b = 0; b < total; ++b) {
        if (slots[b]) {
            r.replicate.push_back(b);
            flat.push_back(slots[b]->flatten());
            r.draws.push_back(std::move(*slots[b]));
        } else {
            r.diverged.push_back(b);
        }
    }
    if (r.diverged.size() * 10 > static_cast<std::size_t>(total))
        throw NumericError(std::to_string(r.diverged.size()) + " of " + std::to_string(total) +
                           " bootstrap replicates diverged");
    r.summary = summarize_draws(flat, config.alpha);
    return r;
}

}  // namespace otcnet
