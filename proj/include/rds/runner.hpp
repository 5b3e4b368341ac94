#pragma once

#include "rds/config.hpp"

#include <optional>
#include <string>

namespace rds::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitConsistency = 3,
    kExitIo = 4,
};

struct RunOptions {
    /// Overrides the config's `output` directory.
    std::optional<std::string> out_dir;
    /// Overrides the config seed; the config seed overrides RDS_SYNC_SEED.
    std::optional<std::uint64_t> seed;
    int threads = 0;
    /// Command line as typed, recorded in the manifest.
    std::string command_line;
};

/// Resolves the seed: --seed, then the config file, then RDS_SYNC_SEED, then the default.
std::uint64_t resolve_seed(const ExperimentConfig& config, const RunOptions& opts);

/// Runs one command and writes `<out>/<cmd>.csv` plus `<out>/manifest.json`.
/// Returns the documented exit code; diagnostics go to stderr.
int run(const std::string& cmd, ExperimentConfig config, const RunOptions& opts);

/// Renders the CSV artifact for `cmd` without touching the filesystem.
std::string render_csv(const std::string& cmd, const ExperimentConfig& config, int threads);

} // namespace rds::cli
