#include "rds/ensemble.hpp"

#include "rds/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rds {

double circle_diameter_pairwise(std::span<const CirclePoint> points) {
    double d = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, circle_dist(points[i], points[j]));
    return d;
}

double circle_diameter(std::span<const CirclePoint> points) {
    if (points.size() <= 64) return circle_diameter_pairwise(points);

    std::vector<double> pos(points.size());
    std::transform(points.begin(), points.end(), pos.begin(), [](CirclePoint p) { return p.pos(); });
    std::sort(pos.begin(), pos.end());

    // The farthest point from x is the one nearest its antipode.
    double d = 0.0;
    const std::size_t k = pos.size();
    for (double x : pos) {
        double target = CirclePoint::canonical(x + 0.5);
        auto it = std::lower_bound(pos.begin(), pos.end(), target);
        std::size_t hi = it == pos.end() ? 0 : static_cast<std::size_t>(it - pos.begin());
        std::size_t lo = (hi + k - 1) % k;
        d = std::max({d, circle_dist(CirclePoint(x), CirclePoint(pos[hi])),
                      circle_dist(CirclePoint(x), CirclePoint(pos[lo]))});
        if (d == 0.5) break;
    }
    return d;
}

TrajectoryEnsemble::TrajectoryEnsemble(std::vector<CirclePoint> initial)
    : points(initial), origin(std::move(initial)) {
    if (points.empty()) throw DomainError("ensemble must contain at least one point");
    diameter_history.push_back({0, diameter()});
}

TrajectoryEnsemble TrajectoryEnsemble::equispaced(std::size_t k, double offset) {
    std::vector<CirclePoint> pts;
    pts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) pts.emplace_back(offset + static_cast<double>(i) / static_cast<double>(k));
    return TrajectoryEnsemble(std::move(pts));
}

TrajectoryEnsemble TrajectoryEnsemble::arc(CirclePoint center, double radius, std::size_t k) {
    std::vector<CirclePoint> pts;
    pts.reserve(k);
    if (k == 1) {
        pts.push_back(center);
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(k - 1);
            pts.emplace_back(center.pos() + t * radius);
        }
    }
    return TrajectoryEnsemble(std::move(pts));
}

void push_points(const RandomMapSystem& sys, double alpha, std::span<CirclePoint> points, const ExecPolicy& policy) {
    // Points are independent; hand out contiguous blocks so scheduling cost stays small.
    constexpr std::size_t kBlock = 512;
    const std::size_t blocks = (points.size() + kBlock - 1) / kBlock;
    for_each_index(blocks, policy, [&](std::size_t b) {
        const std::size_t end = std::min(points.size(), (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) points[i] = sys.step(alpha, points[i]);
    });
}

void evolve_ensemble(const RandomMapSystem& sys, const NoiseStream& omega, TrajectoryEnsemble& ens, std::uint64_t n,
                     std::uint64_t record_every, const ExecPolicy& policy) {
    if (record_every < 1) throw DomainError("record_every must be >= 1");
    for (std::uint64_t s = 0; s < n; ++s) {
        ++ens.time;
        push_points(sys, omega.draw(ens.time), ens.points, policy);
        if (ens.time % record_every == 0) ens.diameter_history.push_back({ens.time, ens.diameter()});
    }
}

} // namespace rds
