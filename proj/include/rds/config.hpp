#pragma once

#include "rds/lift.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rds::cli {

/// Malformed or semantically invalid configuration. Carries either the
/// offending line (parse errors) or the offending key (semantic errors).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line, std::string key)
        : std::runtime_error(what), line_(line), key_(std::move(key)) {}

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

/// How the lift was written: `sine(a=..)`, `rotation(c=..)` or `fourier` + `harmonics`.
struct LiftSpec {
    enum class Form { Sine, Rotation, Fourier };

    Form form = Form::Sine;
    double param = 0.1; // a for sine, c for rotation
    std::vector<Harmonic> harmonics;

    LiftMap build() const;
    friend bool operator==(const LiftSpec&, const LiftSpec&) = default;
};

struct ExperimentConfig {
    std::string experiment = "verdict";
    LiftSpec lift;
    /// Unset until resolved against --seed and RDS_SYNC_SEED.
    std::optional<std::uint64_t> seed;

    // sync / stability / containment
    std::uint64_t horizon = 2000;
    std::size_t n_samples = 200;
    std::size_t n_pairs = 20;
    std::uint64_t record_every = 10;
    double eps_sync = 1e-9;
    std::uint64_t window = 50;

    // lyapunov
    std::uint64_t lyapunov_steps = 200;
    std::size_t lyapunov_samples = 10000;
    double quad_tol = 1e-8;

    // subperiods
    int subperiod_grid = 4096;
    double subperiod_tol = 1e-9;
    bool subperiod_exact = true;

    // accessibility / contractibility
    std::size_t access_sources = 8;
    std::size_t access_arcs = 8;
    double arc_radius = 0.05;
    std::uint64_t access_horizon = 500;
    std::size_t access_samples = 100;
    std::uint64_t contract_horizon = 500;
    std::size_t contract_samples = 200;

    // stability / containment
    double stability_x = 0.25;
    std::vector<double> stability_radii{0.01, 0.02, 0.05, 0.1};
    double containment_eps = 0.1;
    std::vector<double> containment_deltas{0.02, 0.05};

    // pullback
    std::uint64_t pullback_T = 500;
    std::size_t pullback_grid = 1024;
    std::size_t pullback_streams = 100;
    double merge_radius = 0.02;
    double fixed_point_tol = 1e-6;

    // simulate
    std::size_t simulate_points = 32;
    std::uint64_t simulate_steps = 2000;

    // sweep
    std::string sweep_param = "a";
    double sweep_from = 0.01;
    double sweep_to = 0.30;
    double sweep_step = 0.01;

    std::string output = "rds_out";

    static constexpr std::uint64_t kDefaultSeed = 12345;
    std::uint64_t effective_seed() const noexcept { return seed.value_or(kDefaultSeed); }

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses `key = value` lines (`#` comments, `;` also separates statements).
/// Unknown and duplicate keys are rejected; every omitted key keeps its default.
ExperimentConfig parse_config(std::string_view text);

/// Serializes every key, defaults included; parse_config(echo_config(c)) == c.
std::string echo_config(const ExperimentConfig& config);

/// Commands accepted by `run`.
const std::vector<std::string>& known_commands();

} // namespace rds::cli
