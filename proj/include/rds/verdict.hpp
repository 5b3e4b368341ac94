#pragma once

#include "rds/analysis.hpp"
#include "rds/subperiod.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rds {

/// Budgets and thresholds for the three-condition synchronisation check.
struct VerdictConfig {
    std::uint64_t seed = 12345;

    SubperiodOptions subperiods;
    double quad_tol = 1e-8;

    std::size_t n_sources = 8;
    std::size_t n_arcs = 8;
    AccessibilityOptions access;

    /// Low-discrepancy pairs; the antipodal pair is always appended.
    std::size_t n_pairs = 20;
    ContractibilityOptions contract;

    std::uint64_t lyapunov_steps = 200;
    std::size_t lyapunov_samples = 10000;
    /// Quadrature and Monte Carlo exponents must agree within this many stderrs.
    double consistency_z = 5.0;

    /// Rotation offsets within this distance of p/q, q <= max_denominator, count as rational.
    long max_denominator = 10000;
    double rational_tol = 1e-12;
};

struct ConditionResult {
    EstimateCI estimate;
    bool pass = false;
    /// The condition is known to fail exactly, independent of sampling.
    bool exact_failure = false;
    std::string note;
};

struct StableTrajectoriesResult {
    double lambda_quadrature = 0.0;
    EstimateCI lambda_mc;
    bool pass = false;
};

struct SyncVerdict {
    enum class Outcome { StablySynchronising, NotSynchronising, Inconclusive };

    ConditionResult minimality;
    ConditionResult contractibility;
    StableTrajectoriesResult stable_trajectories;
    SubperiodReport subperiods;
    Outcome verdict = Outcome::Inconclusive;
    std::vector<std::string> caveats;
};

std::string to_string(SyncVerdict::Outcome outcome);

/// p/q with q <= max_denominator and |c - p/q| <= tol, if any (best rational approximation).
std::optional<std::pair<long, long>> rational_approximation(double c, long max_denominator, double tol);

/// Runs the exact disqualifiers and the Monte Carlo checks for minimality (i),
/// two-point contractibility (ii) and stable trajectories (iii), and combines
/// them. Throws ConsistencyError when quadrature and Monte Carlo exponents disagree.
SyncVerdict render_verdict(const RandomMapSystem& sys, const VerdictConfig& config, const ExecPolicy& policy = {});

} // namespace rds
