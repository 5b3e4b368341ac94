#include "rds/pullback.hpp"

#include "rds/ensemble.hpp"
#include "rds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rds {

double EmpiricalMeasure::total_mass() const {
    double s = 0.0;
    for (const Atom& a : atoms) s += a.weight;
    return s;
}

EmpiricalMeasure pullback_measure(const RandomMapSystem& sys, const NoiseStream& omega, std::uint64_t T,
                                  std::size_t grid, const ExecPolicy& policy) {
    if (T < 1) throw DomainError("pullback_measure needs T >= 1");
    if (grid < 64) throw DomainError("pullback_measure needs a grid of at least 64 atoms");

    std::vector<CirclePoint> pts;
    pts.reserve(grid);
    for (std::size_t i = 0; i < grid; ++i) pts.emplace_back(static_cast<double>(i) / static_cast<double>(grid));

    // Atoms are independent; each runs the whole composition on its own.
    for_each_index(grid, policy, [&](std::size_t i) {
        CirclePoint x = pts[i];
        for (std::uint64_t k = T; k >= 1; --k) x = sys.step(omega.draw(k), x);
        pts[i] = x;
    });

    EmpiricalMeasure m;
    m.resolution = grid;
    m.atoms.reserve(grid);
    const double w = 1.0 / static_cast<double>(grid);
    for (CirclePoint p : pts) m.atoms.push_back({p, w});
    return m;
}

EmpiricalMeasure push_forward(const RandomMapSystem& sys, double alpha, EmpiricalMeasure m) {
    for (Atom& a : m.atoms) a.pos = sys.step(alpha, a.pos);
    return m;
}

CirclePoint circular_mean(const std::vector<Atom>& atoms) {
    double c = 0.0, s = 0.0;
    for (const Atom& a : atoms) {
        const double theta = 2.0 * std::numbers::pi * a.pos.pos();
        c += a.weight * std::cos(theta);
        s += a.weight * std::sin(theta);
    }
    return CirclePoint(std::atan2(s, c) / (2.0 * std::numbers::pi));
}

ClusterReport cluster_atoms(const EmpiricalMeasure& m, double merge_radius) {
    if (!(merge_radius > 0.0 && merge_radius < 0.25)) throw DomainError("merge_radius must lie in (0, 1/4)");

    ClusterReport report;
    report.merge_radius = merge_radius;
    if (m.atoms.empty()) return report;

    std::vector<Atom> sorted = m.atoms;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Atom& a, const Atom& b) { return a.pos.pos() < b.pos.pos(); });
    const std::size_t n = sorted.size();

    // gap[i]: distance from atom i to atom i+1 going counter-clockwise.
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i < n; ++i) {
        const double next = i + 1 < n ? sorted[i + 1].pos.pos() : sorted[0].pos.pos() + 1.0;
        if (next - sorted[i].pos.pos() > merge_radius) cuts.push_back(i);
    }

    std::vector<std::vector<Atom>> groups;
    std::vector<double> gaps; // gap following each group
    if (cuts.empty()) {
        groups.push_back(sorted);
        gaps.push_back(0.0);
    } else {
        // Start just after the first cut so a group straddling 0 stays intact.
        for (std::size_t c = 0; c < cuts.size(); ++c) {
            const std::size_t begin = (cuts[c] + 1) % n;
            const std::size_t end = cuts[(c + 1) % cuts.size()];
            std::vector<Atom> g;
            for (std::size_t i = begin;; i = (i + 1) % n) {
                g.push_back(sorted[i]);
                if (i == end) break;
            }
            const double next = end + 1 < n ? sorted[end + 1].pos.pos() : sorted[0].pos.pos() + 1.0;
            gaps.push_back(next - sorted[end].pos.pos());
            groups.push_back(std::move(g));
        }
    }

    double min_gap = 1.0;
    for (double g : gaps) min_gap = std::min(min_gap, g);
    if (cuts.empty()) min_gap = 0.0;

    for (const auto& g : groups) {
        Cluster c;
        for (const Atom& a : g) c.mass += a.weight;
        c.center = circular_mean(g);
        for (const Atom& a : g) c.spread = std::max(c.spread, circle_dist(a.pos, c.center));
        report.clusters.push_back(c);
    }
    std::sort(report.clusters.begin(), report.clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.center.pos() < b.center.pos(); });

    report.atomic = !cuts.empty();
    for (const Cluster& c : report.clusters)
        if (!(c.spread < 0.1 * min_gap)) report.atomic = false;
    return report;
}

std::optional<CirclePoint> random_fixed_point(const RandomMapSystem& sys, const NoiseStream& omega,
                                              const FixedPointOptions& opts, const ExecPolicy& policy) {
    const EmpiricalMeasure cloud = pullback_measure(sys, omega, opts.T, opts.grid, policy);
    const ClusterReport report = cluster_atoms(cloud, opts.merge_radius);
    if (report.n_clusters() != 1 || !(report.clusters.front().spread < opts.tol)) return std::nullopt;
    return report.clusters.front().center;
}

} // namespace rds
