#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "otcnet/cli/experiment.hpp"
#include "otcnet/core/error.hpp"

namespace otcnet {

/// Files a command wrote, relative to its output directory.
using WrittenFiles = std::vector<std::filesystem::path>;

inline constexpr const char* kLockFile = ".otcnet.lock";
inline constexpr const char* kManifestFile = "manifest.json";

/// Exclusive claim on an output directory for the lifetime of the object.
/// Throws ConfigError when another run holds the lock.
class OutputLock {
  public:
    explicit OutputLock(const std::filesystem::path& dir);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

  private:
    std::filesystem::path path_;
};

/// 2 config, 3 data, 4 numeric.
int exit_code(ErrorKind kind);

/// Synthetic market with truth columns, observed trades, per-variable
/// summary statistics, the value iterates and the resolved config.
WrittenFiles cmd_generate(const ExperimentConfig& config, const std::filesystem::path& out);

/// Converged equilibrium of the market in `data`, from its truth latents when
/// present and otherwise from the configured true parameters.
WrittenFiles cmd_solve(const ExperimentConfig& config, const std::filesystem::path& data,
                       const std::filesystem::path& out);

/// Fitted model, loss curve, latent recovery and price fit.
WrittenFiles cmd_train(const ExperimentConfig& config, const std::filesystem::path& data,
                       const std::filesystem::path& out);

/// Bootstrap draws, percentile summary and per-parameter histograms. Uses the
/// fitted model in `out` as the point estimate when present.
WrittenFiles cmd_bootstrap(const ExperimentConfig& config, const std::filesystem::path& data,
                           const std::filesystem::path& out);

/// OLS suite against the structural fit: comparison table, coefficients and
/// the prediction scatter of the best OLS model and the structural model.
WrittenFiles cmd_compare(const ExperimentConfig& config, const std::filesystem::path& data,
                         const std::filesystem::path& out);

/// generate, train, bootstrap and compare into `out`, then a manifest with
/// checksums and per-stage wall-clock times.
WrittenFiles cmd_reproduce(const ExperimentConfig& config, const std::filesystem::path& out);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace otcnet
