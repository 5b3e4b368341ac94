#include "rds/system.hpp"

namespace rds {

CirclePoint iterate(const RandomMapSystem& sys, const NoiseStream& omega, CirclePoint x, std::uint64_t n) {
    for (std::uint64_t k = 1; k <= n; ++k) x = sys.step(omega.draw(k), x);
    return x;
}

std::vector<CirclePoint> iterate_path(const RandomMapSystem& sys, const NoiseStream& omega, CirclePoint x,
                                      std::uint64_t n) {
    std::vector<CirclePoint> path;
    path.reserve(n + 1);
    path.push_back(x);
    for (std::uint64_t k = 1; k <= n; ++k) {
        x = sys.step(omega.draw(k), x);
        path.push_back(x);
    }
    return path;
}

std::vector<PairDistance> two_point_orbit(const RandomMapSystem& sys, const NoiseStream& omega, CirclePoint x,
                                          CirclePoint y, std::uint64_t n) {
    std::vector<PairDistance> out;
    out.reserve(n + 1);
    out.push_back({0, circle_dist(x, y)});
    for (std::uint64_t k = 1; k <= n; ++k) {
        const double alpha = omega.draw(k);
        x = sys.step(alpha, x);
        y = sys.step(alpha, y);
        out.push_back({k, circle_dist(x, y)});
    }
    return out;
}

} // namespace rds
