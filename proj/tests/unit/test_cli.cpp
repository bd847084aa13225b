#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "otcnet/cli/commands.hpp"
#include "otcnet/cli/experiment.hpp"
#include "otcnet/core/error.hpp"
#include "support.hpp"

using namespace otcnet;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(OTCNET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t data_rows(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++n;
    return n - 1;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const auto path = dir / "config.json";
    std::ofstream(path) << text;
    return path;
}

const char* kSmoke = R"({"preset": "dense", "seed": 3, "train": {"epochs": 25}, "bootstrap": {"replicates": 2}})";

}  // namespace

TEST_CASE("presets carry the published hyperparameters") {
    for (const char* name : kPresetNames) {
        const auto c = preset_config(name, 4);
        CAPTURE(name);
        CHECK(c.preset == name);
        CHECK(c.train.rounds == 10);
        CHECK(c.train.lr == 0.01);
        CHECK(c.train.epochs == 300);
        CHECK(c.bootstrap.replicates == 100);
        CHECK(c.gen.truth == ModelParams::constant(1, 1, 1, 1.0));
        CHECK(c.gen.dims.assets == 2);
        CHECK(c.gen.dims.days == 5);
        CHECK(c.seed == 4);
        CHECK(c.gen.seed != c.train.seed);
    }
    CHECK(preset_config("dense").gen.dims.dealers == 10);
    CHECK(preset_config("core-periphery").gen.dims.dealers == 20);
    CHECK_THROWS_AS(preset_config("hub"), ConfigError);
}

TEST_CASE("experiment JSON") {
    auto c = preset_config("sparse", 11);
    c.train.epochs = 42;
    c.bootstrap.alpha = 0.1;
    c.emit_plots = false;
    const auto back = experiment_from_json(experiment_to_json(c));
    CHECK(back.preset == "sparse");
    CHECK(back.seed == 11);
    CHECK(back.gen == c.gen);
    CHECK(back.train.epochs == 42);
    CHECK(back.bootstrap.alpha == 0.1);
    CHECK(!back.emit_plots);

    const auto over = experiment_from_json(nlohmann::json::parse(R"({"preset": "dense", "seed": 5, "train": {"lr": 0.02}})"));
    CHECK(over.train.lr == 0.02);
    CHECK(over.train.epochs == 300);
    CHECK(over.gen.seed == preset_config("dense", 5).gen.seed);
    CHECK_THROWS_AS(experiment_from_json(nlohmann::json::parse(R"({"seed": -1})")), ConfigError);
    CHECK_THROWS_AS(experiment_from_json(nlohmann::json::parse(R"({"bootstrap": {"alpha": "x"}})")), ConfigError);
    CHECK_THROWS_AS(load_experiment(otcnet::testing::scratch_dir("cfg") / "missing.json"), ConfigError);
}

TEST_CASE("output lock") {
    const auto dir = otcnet::testing::scratch_dir("lock");
    {
        OutputLock a(dir);
        CHECK(fs::exists(dir / kLockFile));
        CHECK_THROWS_AS(OutputLock{dir}, ConfigError);
    }
    CHECK(!fs::exists(dir / kLockFile));
    OutputLock again(dir);
}

TEST_CASE("sha256 of known content") {
    const auto path = otcnet::testing::scratch_dir("sha") / "abc.txt";
    std::ofstream(path) << "abc";
    CHECK(sha256_file(path) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("exit codes") {
    const auto dir = otcnet::testing::scratch_dir("exit_codes");
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("generate --config " + (dir / "nope.json").string()) == 2);
    CHECK(run_cli("generate --preset hub --out " + (dir / "a").string()) == 2);
    CHECK(run_cli("generate --jobs 0 --out " + (dir / "a").string()) == 2);

    const auto bad = write_config(dir, R"({"preset": "dense", "train": {"lr": -1}})");
    CHECK(run_cli("train --config " + bad.string() + " --out " + (dir / "b").string()) == 2);
    const auto clash = write_config(dir, R"({"preset": "dense"})");
    CHECK(run_cli("generate --config " + clash.string() + " --preset sparse --out " + (dir / "a").string()) == 2);

    // Training with no generated data, then with a corrupted edge file.
    CHECK(run_cli("train --out " + (dir / "empty").string()) == 3);
    const auto data = dir / "data";
    REQUIRE(run_cli("generate --seed 2 --out " + data.string()) == 0);
    std::ofstream(data / "edges.csv", std::ios::app) << "1,1,0,0,0.5\n";
    CHECK(run_cli("train --data " + data.string() + " --out " + (dir / "c").string()) == 3);

    const auto good = dir / "good";
    REQUIRE(run_cli("generate --seed 2 --out " + good.string()) == 0);
    const auto diverge = write_config(dir, R"({"preset": "dense", "seed": 2, "train": {"optimizer": "gd", "lr": 1e6}})");
    CHECK(run_cli("train --config " + diverge.string() + " --out " + good.string()) == 4);

    std::ofstream(good / kLockFile) << "";
    CHECK(run_cli("generate --seed 2 --out " + good.string()) == 2);
}

TEST_CASE("smoke run produces well-formed and reproducible files") {
    const auto dir = otcnet::testing::scratch_dir("smoke");
    const auto cfg = write_config(dir, kSmoke);
    const auto a = dir / "a", b = dir / "b";
    REQUIRE(run_cli("reproduce --config " + cfg.string() + " --out " + a.string()) == 0);
    REQUIRE(run_cli("reproduce --config " + cfg.string() + " --out " + b.string() + " --jobs 2") == 0);

    for (const char* f : {"nodes.csv", "edges.csv", "observed.csv", "summary_stats.csv", "fitted_model.json",
                          "loss.csv", "price_fit.csv", "latent_nodes.csv", "latent_edges.csv", "bootstrap_draws.csv",
                          "bootstrap_summary.csv", "bootstrap_histogram.csv", "comparison.csv", "manifest.json"})
        CHECK_MESSAGE(fs::exists(a / f), f);
    CHECK(!fs::exists(a / kLockFile));
    CHECK(data_rows(a / "loss.csv") == 25);
    CHECK(data_rows(a / "bootstrap_draws.csv") == 2);
    CHECK(data_rows(a / "comparison.csv") == 8);

    const auto manifest = nlohmann::json::parse(slurp(a / kManifestFile));
    CHECK(manifest.at("stages").size() == 4);
    std::size_t listed = 0;
    for (const auto& f : manifest.at("files")) {
        const auto name = f.at("path").get<std::string>();
        CAPTURE(name);
        CHECK(f.at("sha256").get<std::string>() == sha256_file(a / name));
        CHECK(slurp(a / name) == slurp(b / name));
        ++listed;
    }
    std::size_t on_disk = 0;
    for (const auto& e : fs::directory_iterator(a))
        if (e.path().filename() != kManifestFile) ++on_disk;
    CHECK(listed == on_disk);

    // A later stage on its own reuses the data and rewrites identical output.
    const auto before = slurp(a / "comparison.csv");
    REQUIRE(run_cli("compare --config " + cfg.string() + " --out " + a.string()) == 0);
    CHECK(slurp(a / "comparison.csv") == before);

    REQUIRE(run_cli("solve --config " + cfg.string() + " --out " + a.string()) == 0);
    CHECK(fs::exists(a / "equilibrium_nodes.csv"));
}
