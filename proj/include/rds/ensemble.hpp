#pragma once

#include "rds/exec.hpp"
#include "rds/system.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rds {

/// Exact diameter max_{i,j} d(x_i, x_j) of a finite set on the circle.
/// Pairwise for up to 64 points; larger sets sort and, for each point, look up
/// the neighbours of its antipode (O(K log K)).
double circle_diameter(std::span<const CirclePoint> points);

/// Reference O(K^2) pairwise diameter.
double circle_diameter_pairwise(std::span<const CirclePoint> points);

struct DiameterSample {
    std::uint64_t n;
    double diameter;
};

/// A finite set A of initial conditions moved by one shared noise realization.
struct TrajectoryEnsemble {
    std::vector<CirclePoint> points;
    std::vector<CirclePoint> origin;
    std::uint64_t time = 0;
    std::vector<DiameterSample> diameter_history;

    explicit TrajectoryEnsemble(std::vector<CirclePoint> initial);

    /// K points at (offset + i/K).
    static TrajectoryEnsemble equispaced(std::size_t k, double offset = 0.0);
    /// K points spanning the closed arc [center - radius, center + radius].
    static TrajectoryEnsemble arc(CirclePoint center, double radius, std::size_t k);

    double diameter() const { return circle_diameter(points); }
};

/// Advance every point of the ensemble n steps under omega (reading draws
/// time+1 .. time+n) and append the diameter every `record_every` steps.
/// Points are advanced with the given policy; the serial policy is the
/// reference.
void evolve_ensemble(const RandomMapSystem& sys, const NoiseStream& omega, TrajectoryEnsemble& ens, std::uint64_t n,
                     std::uint64_t record_every, const ExecPolicy& policy = ExecPolicy::serial());

/// Apply f_alpha to every point in place.
void push_points(const RandomMapSystem& sys, double alpha, std::span<CirclePoint> points, const ExecPolicy& policy);

} // namespace rds
