#pragma once

#include "rds/exec.hpp"
#include "rds/system.hpp"

#include <optional>
#include <vector>

namespace rds {

struct Atom {
    CirclePoint pos;
    double weight = 0.0;
};

/// Weighted point cloud on the circle.
struct EmpiricalMeasure {
    std::vector<Atom> atoms;
    /// Size of the source grid the cloud was pushed from.
    std::size_t resolution = 0;

    double total_mass() const;
};

struct Cluster {
    CirclePoint center;
    double mass = 0.0;
    double spread = 0.0;
};

struct ClusterReport {
    std::vector<Cluster> clusters;
    double merge_radius = 0.0;
    /// Every spread is below 0.1 x the smallest gap separating clusters.
    bool atomic = false;

    std::size_t n_clusters() const noexcept { return clusters.size(); }
};

/// Pullback approximation of the invariant measure mu_omega.
///
/// The stream is read as the noise of the past: draw(k) drives the step from
/// time -k to -k+1. N equispaced atoms (discretized Lebesgue measure) are
/// pushed through f_{draw(1)} o f_{draw(2)} o ... o f_{draw(T)}, oldest draw
/// first. Increasing T on a fixed stream therefore only prepends older maps,
/// and f_{omega.draw(1)} applied to the T-cloud of omega.shift(1) is exactly
/// the (T+1)-cloud of omega.
EmpiricalMeasure pullback_measure(const RandomMapSystem& sys, const NoiseStream& omega, std::uint64_t T,
                                  std::size_t grid, const ExecPolicy& policy = ExecPolicy::serial());

/// Push every atom through f_alpha.
EmpiricalMeasure push_forward(const RandomMapSystem& sys, double alpha, EmpiricalMeasure m);

/// Weighted circular mean via angle-vector averaging.
CirclePoint circular_mean(const std::vector<Atom>& atoms);

/// Single-linkage clustering on the circle: the sorted cloud is cut at every
/// gap larger than merge_radius. A cloud with no such gap is one cluster.
ClusterReport cluster_atoms(const EmpiricalMeasure& m, double merge_radius);

struct FixedPointOptions {
    std::uint64_t T = 500;
    std::size_t grid = 1024;
    double merge_radius = 0.02;
    double tol = 1e-6;
};

/// Circular mean of the pullback cloud when it is a single cluster with spread < tol.
std::optional<CirclePoint> random_fixed_point(const RandomMapSystem& sys, const NoiseStream& omega,
                                              const FixedPointOptions& opts,
                                              const ExecPolicy& policy = ExecPolicy::serial());

} // namespace rds
