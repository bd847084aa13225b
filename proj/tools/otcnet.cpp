// Command-line driver: generate | solve | train | bootstrap | compare | reproduce.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "otcnet/cli/commands.hpp"
#include "otcnet/kernels/sweep.hpp"

namespace fs = std::filesystem;
using namespace otcnet;

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string data;
    std::string preset;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
};

ExperimentConfig resolve(const Options& o, const std::string& default_preset) {
    ExperimentConfig c;
    if (!o.config.empty()) {
        c = load_experiment(o.config);
        if (!o.preset.empty() && o.preset != c.preset)
            throw ConfigError("--preset conflicts with the preset named in " + o.config);
    } else {
        c = preset_config(o.preset.empty() ? default_preset : o.preset);
    }
    if (o.seed) c.seed = *o.seed;
    c.derive_seeds();
    c.bootstrap.jobs = o.jobs;
    c.bootstrap.validate();
    if (!o.out.empty()) c.outputs = o.out;
    return c;
}

void report(const WrittenFiles& files, const fs::path& out) {
    for (const auto& f : files) std::cout << (out / f).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural estimation of OTC trading networks"};
    app.require_subcommand(1);
    Options o;
    std::string reproduce_preset;

    auto common = [&](CLI::App* sub, bool data_flag) {
        sub->add_option("--config", o.config, "experiment config (JSON)")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--seed", o.seed, "top-level seed (overrides the config)");
        sub->add_option("--preset", o.preset, "dense | sparse | core-periphery");
        sub->add_option("--jobs", o.jobs, "worker threads for bootstrap replicates")->check(CLI::PositiveNumber);
        if (data_flag) sub->add_option("--data", o.data, "directory with generated data (default: --out)");
    };

    auto* gen = app.add_subcommand("generate", "generate a synthetic market");
    common(gen, false);
    auto* solve = app.add_subcommand("solve", "solve the equilibrium of a generated market");
    common(solve, true);
    auto* trn = app.add_subcommand("train", "fit the structural model");
    common(trn, true);
    auto* boot = app.add_subcommand("bootstrap", "bootstrap confidence intervals");
    common(boot, true);
    auto* cmp = app.add_subcommand("compare", "OLS baselines against the structural fit");
    common(cmp, true);
    auto* rep = app.add_subcommand("reproduce", "run every stage for a preset");
    common(rep, false);
    rep->add_option("preset_name", reproduce_preset, "dense | sparse | core-periphery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code(ErrorKind::Config);
    }

    try {
        if (rep->parsed() && !reproduce_preset.empty()) {
            if (!o.preset.empty() && o.preset != reproduce_preset)
                throw ConfigError("preset given twice with different values");
            o.preset = reproduce_preset;
        }
        const auto config = resolve(o, "dense");
        const fs::path out = config.outputs;
        const fs::path data = o.data.empty() ? out : fs::path(o.data);
        OutputLock lock(out);
        std::cerr << "kernels: " << kernels::isa_name(kernels::active().isa) << '\n';

        WrittenFiles files;
        if (gen->parsed()) files = cmd_generate(config, out);
        else if (solve->parsed()) files = cmd_solve(config, data, out);
        else if (trn->parsed()) files = cmd_train(config, data, out);
        else if (boot->parsed()) files = cmd_bootstrap(config, data, out);
        else if (cmp->parsed()) files = cmd_compare(config, data, out);
        else files = cmd_reproduce(config, out);
        report(files, out);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(ErrorKind::Data);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
