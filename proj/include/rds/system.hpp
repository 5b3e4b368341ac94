#pragma once

#include "rds/circle.hpp"
#include "rds/lift.hpp"
#include "rds/noise.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rds {

/// A lift family f_alpha driven by i.i.d. Uniform[0,1) noise. Induces the
/// cocycle phi(n, omega) = f_{alpha_n} o ... o f_{alpha_1}.
struct RandomMapSystem {
    LiftMap lift;
    std::string description;

    explicit RandomMapSystem(LiftMap l, std::string desc = {})
        : lift(std::move(l)), description(desc.empty() ? lift.describe() : std::move(desc)) {}

    /// One step with noise parameter alpha.
    CirclePoint step(double alpha, CirclePoint x) const { return apply_randomized_map(lift, alpha, x); }
};

/// phi(n, omega) x.
CirclePoint iterate(const RandomMapSystem& sys, const NoiseStream& omega, CirclePoint x, std::uint64_t n);

/// x_0, ..., x_n along phi(k, omega) x.
std::vector<CirclePoint> iterate_path(const RandomMapSystem& sys, const NoiseStream& omega, CirclePoint x,
                                      std::uint64_t n);

struct PairDistance {
    std::uint64_t k;
    double distance;
};

/// d(phi(k,omega)x, phi(k,omega)y) for k = 0..n, both points driven by the same draws.
std::vector<PairDistance> two_point_orbit(const RandomMapSystem& sys, const NoiseStream& omega, CirclePoint x,
                                          CirclePoint y, std::uint64_t n);

} // namespace rds
