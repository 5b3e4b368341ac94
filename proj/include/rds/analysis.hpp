#pragma once

#include "rds/estimate.hpp"
#include "rds/exec.hpp"
#include "rds/system.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace rds {

// Monte Carlo estimators for the synchronisation conditions. Every sample owns
// its own NoiseStream (stream id derived from an experiment tag and the sample
// index), so results do not depend on the execution policy. Where a sample
// needs a random initial point it takes draw(0) of its stream, which the
// cocycle never consumes.

using PointPair = std::pair<CirclePoint, CirclePoint>;

struct LyapunovEstimate {
    EstimateCI estimate;
    /// Samples that hit F' = 0 exactly and were excluded.
    std::size_t degenerate_samples = 0;
};

/// (1/n) E log|(phi(n,omega))'(x)| with x ~ Lebesgue and a fresh omega per sample.
LyapunovEstimate lyapunov_mc(const RandomMapSystem& sys, std::uint64_t n_steps, std::size_t n_samples,
                             std::uint64_t seed, const ExecPolicy& policy = {});

struct ContractibilityResult {
    PointPair pair;
    /// P(exists t <= T : d_t < d_0 - margin).
    EstimateCI probability;
    /// 10/50/90% quantiles of min_{t <= T} d_t over samples.
    double min_dist_q10 = 0.0, min_dist_q50 = 0.0, min_dist_q90 = 0.0;
};

struct ContractibilityOptions {
    std::uint64_t horizon = 500;
    std::size_t n_samples = 200;
    /// Strict decrease is counted only beyond this margin, so round-off on an
    /// isometric orbit never registers as contraction.
    double margin = 1e-9;
};

std::vector<ContractibilityResult> contractibility_test(const RandomMapSystem& sys, const std::vector<PointPair>& pairs,
                                                        const ContractibilityOptions& opts, std::uint64_t seed,
                                                        const ExecPolicy& policy = {});

/// Row-major matrix of hitting probabilities P(exists t <= T : phi(t,omega)x_i in B_r(u_j)).
struct AccessibilityMatrix {
    std::vector<CirclePoint> sources;
    std::vector<CirclePoint> arc_centers;
    double arc_radius = 0.0;
    std::vector<EstimateCI> entries;

    const EstimateCI& at(std::size_t i, std::size_t j) const { return entries[i * arc_centers.size() + j]; }
    double min_probability() const;
};

struct AccessibilityOptions {
    double arc_radius = 0.05;
    std::uint64_t horizon = 500;
    std::size_t n_samples = 100;
};

AccessibilityMatrix accessibility_probe(const RandomMapSystem& sys, const std::vector<CirclePoint>& sources,
                                        const std::vector<CirclePoint>& arc_centers, const AccessibilityOptions& opts,
                                        std::uint64_t seed, const ExecPolicy& policy = {});

/// Sources at i/n_sources, arc centers at (j + 1/2)/n_arcs.
AccessibilityMatrix accessibility_probe(const RandomMapSystem& sys, std::size_t n_sources, std::size_t n_arcs,
                                        const AccessibilityOptions& opts, std::uint64_t seed,
                                        const ExecPolicy& policy = {});

struct SyncOptions {
    std::uint64_t horizon = 2000;
    std::size_t n_samples = 200;
    double eps_sync = 1e-9;
    /// A run is synced when d_t < eps_sync for each of the last `window` steps.
    std::uint64_t window = 50;
    std::uint64_t record_every = 10;
};

struct DecayPoint {
    std::uint64_t t;
    double median_dist;
};

struct SyncResult {
    PointPair pair;
    EstimateCI p_synced;
    /// Median over runs of the first t with d_t < eps_sync; nullopt if no run got there.
    std::optional<double> median_hit_time;
    std::vector<DecayPoint> decay_curve;
};

std::vector<SyncResult> sync_mc(const RandomMapSystem& sys, const std::vector<PointPair>& pairs,
                                const SyncOptions& opts, std::uint64_t seed, const ExecPolicy& policy = {});

struct StabilityOptions {
    std::uint64_t horizon = 2000;
    std::size_t n_samples = 200;
    double eps_sync = 1e-9;
    std::size_t arc_points = 17;
};

/// P_r(x) surrogate per radius: the arc B_r(x) has diameter < eps_sync at the horizon.
/// All radii share the same noise streams.
std::vector<EstimateCI> stability_probe(const RandomMapSystem& sys, CirclePoint x, const std::vector<double>& radii,
                                        const StabilityOptions& opts, std::uint64_t seed,
                                        const ExecPolicy& policy = {});

struct ContainmentOptions {
    std::uint64_t horizon = 2000;
    std::size_t n_samples = 200;
    std::size_t arc_points = 17;
    /// Slack on the <= eps comparison for accumulated round-off.
    double slack = 1e-12;
};

/// P(for all y with d(x,y) <= delta and all t <= T : d(phi_t x, phi_t y) <= eps).
/// Streams depend only on (seed, sample), so probes at different delta are coupled.
EstimateCI containment_probe(const RandomMapSystem& sys, CirclePoint x, double eps, double delta,
                             const ContainmentOptions& opts, std::uint64_t seed, const ExecPolicy& policy = {});

/// Kolmogorov-Smirnov distance between the occupation measure of x_1..x_n and Lebesgue.
double occupation_ks(const RandomMapSystem& sys, const NoiseStream& omega, CirclePoint x0, std::uint64_t n_steps);

/// `count` well-spread pairs from additive recurrences, with separations in (0, 1/2].
std::vector<PointPair> low_discrepancy_pairs(std::size_t count);

} // namespace rds
