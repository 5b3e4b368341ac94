#include "rds/analysis.hpp"

#include "rds/ensemble.hpp"
#include "rds/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>

namespace rds {

namespace {

constexpr std::uint64_t tag(std::string_view name) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t kTagLyapunov = tag("lyapunov_mc");
constexpr std::uint64_t kTagContract = tag("contractibility");
constexpr std::uint64_t kTagAccess = tag("accessibility");
constexpr std::uint64_t kTagSync = tag("sync_mc");
constexpr std::uint64_t kTagStability = tag("stability");
constexpr std::uint64_t kTagContainment = tag("containment");

// Linear-interpolated quantile of an unsorted sample.
double quantile(std::vector<double> v, double q) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

NoiseStream sample_stream(std::uint64_t seed, std::uint64_t experiment, std::uint64_t group, std::uint64_t sample) {
    return NoiseStream(seed, stream_id_for(stream_id_for(experiment, group), sample));
}

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

} // namespace

LyapunovEstimate lyapunov_mc(const RandomMapSystem& sys, std::uint64_t n_steps, std::size_t n_samples,
                             std::uint64_t seed, const ExecPolicy& policy) {
    require(n_steps >= 1, "lyapunov_mc needs n_steps >= 1");
    require(n_samples >= 2, "lyapunov_mc needs n_samples >= 2");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto per_sample = map_indices<double>(n_samples, policy, [&](std::size_t i) {
        const NoiseStream omega = sample_stream(seed, kTagLyapunov, 0, i);
        CirclePoint x(omega.draw(0));
        double log_derivative = 0.0;
        for (std::uint64_t k = 1; k <= n_steps; ++k) {
            const double alpha = omega.draw(k);
            const double d = map_derivative(sys.lift, alpha, x);
            if (d == 0.0) return nan;
            log_derivative += std::log(std::fabs(d));
            x = sys.step(alpha, x);
        }
        return log_derivative / static_cast<double>(n_steps);
    });

    LyapunovEstimate out;
    std::vector<double> kept;
    kept.reserve(per_sample.size());
    for (double v : per_sample) {
        if (std::isnan(v))
            ++out.degenerate_samples;
        else
            kept.push_back(v);
    }
    out.estimate = EstimateCI::mean_of(kept, "monte_carlo");
    return out;
}

std::vector<ContractibilityResult> contractibility_test(const RandomMapSystem& sys, const std::vector<PointPair>& pairs,
                                                        const ContractibilityOptions& opts, std::uint64_t seed,
                                                        const ExecPolicy& policy) {
    require(opts.horizon >= 1, "contractibility_test needs T >= 1");
    for (const auto& [x, y] : pairs) require(!(x == y), "contractibility_test needs x != y for every pair");

    struct Sample {
        bool contracted;
        double min_dist;
    };
    const std::size_t n = opts.n_samples;
    auto samples = map_indices<Sample>(pairs.size() * n, policy, [&](std::size_t idx) {
        const std::size_t p = idx / n, s = idx % n;
        const NoiseStream omega = sample_stream(seed, kTagContract, p, s);
        CirclePoint x = pairs[p].first, y = pairs[p].second;
        const double d0 = circle_dist(x, y);
        double dmin = d0;
        for (std::uint64_t t = 1; t <= opts.horizon; ++t) {
            const double alpha = omega.draw(t);
            x = sys.step(alpha, x);
            y = sys.step(alpha, y);
            dmin = std::min(dmin, circle_dist(x, y));
        }
        return Sample{dmin < d0 - opts.margin, dmin};
    });

    std::vector<ContractibilityResult> out;
    out.reserve(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::size_t hits = 0;
        std::vector<double> mins;
        mins.reserve(n);
        for (std::size_t s = 0; s < n; ++s) {
            hits += samples[p * n + s].contracted ? 1 : 0;
            mins.push_back(samples[p * n + s].min_dist);
        }
        ContractibilityResult r;
        r.pair = pairs[p];
        r.probability = EstimateCI::bernoulli(hits, n, "monte_carlo");
        r.min_dist_q10 = quantile(mins, 0.1);
        r.min_dist_q50 = quantile(mins, 0.5);
        r.min_dist_q90 = quantile(mins, 0.9);
        out.push_back(std::move(r));
    }
    return out;
}

double AccessibilityMatrix::min_probability() const {
    double m = 1.0;
    for (const EstimateCI& e : entries) m = std::min(m, e.value);
    return m;
}

AccessibilityMatrix accessibility_probe(const RandomMapSystem& sys, const std::vector<CirclePoint>& sources,
                                        const std::vector<CirclePoint>& arc_centers, const AccessibilityOptions& opts,
                                        std::uint64_t seed, const ExecPolicy& policy) {
    require(opts.arc_radius > 0.0 && opts.arc_radius < 0.25, "accessibility_probe needs 0 < r < 1/4");
    const std::size_t n = opts.n_samples, arcs = arc_centers.size();

    // One row of hit flags per (source, sample).
    auto hits = map_indices<std::vector<char>>(sources.size() * n, policy, [&](std::size_t idx) {
        const std::size_t i = idx / n, s = idx % n;
        const NoiseStream omega = sample_stream(seed, kTagAccess, i, s);
        std::vector<char> hit(arcs, 0);
        std::size_t remaining = arcs;
        auto mark = [&](CirclePoint p) {
            for (std::size_t j = 0; j < arcs; ++j) {
                if (!hit[j] && circle_dist(p, arc_centers[j]) < opts.arc_radius) {
                    hit[j] = 1;
                    --remaining;
                }
            }
        };
        CirclePoint x = sources[i];
        mark(x);
        for (std::uint64_t t = 1; t <= opts.horizon && remaining > 0; ++t) {
            x = sys.step(omega.draw(t), x);
            mark(x);
        }
        return hit;
    });

    AccessibilityMatrix m;
    m.sources = sources;
    m.arc_centers = arc_centers;
    m.arc_radius = opts.arc_radius;
    m.entries.reserve(sources.size() * arcs);
    for (std::size_t i = 0; i < sources.size(); ++i) {
        for (std::size_t j = 0; j < arcs; ++j) {
            std::size_t count = 0;
            for (std::size_t s = 0; s < n; ++s) count += hits[i * n + s][j] ? 1 : 0;
            m.entries.push_back(EstimateCI::bernoulli(count, n, "monte_carlo"));
        }
    }
    return m;
}

AccessibilityMatrix accessibility_probe(const RandomMapSystem& sys, std::size_t n_sources, std::size_t n_arcs,
                                        const AccessibilityOptions& opts, std::uint64_t seed,
                                        const ExecPolicy& policy) {
    require(n_sources >= 4 && n_arcs >= 4, "accessibility_probe needs at least 4 sources and 4 arcs");
    std::vector<CirclePoint> sources, centers;
    for (std::size_t i = 0; i < n_sources; ++i)
        sources.emplace_back(static_cast<double>(i) / static_cast<double>(n_sources));
    for (std::size_t j = 0; j < n_arcs; ++j)
        centers.emplace_back((static_cast<double>(j) + 0.5) / static_cast<double>(n_arcs));
    return accessibility_probe(sys, sources, centers, opts, seed, policy);
}

std::vector<SyncResult> sync_mc(const RandomMapSystem& sys, const std::vector<PointPair>& pairs,
                                const SyncOptions& opts, std::uint64_t seed, const ExecPolicy& policy) {
    require(opts.eps_sync > 0.0, "sync_mc needs eps_sync > 0");
    require(opts.horizon >= 1, "sync_mc needs T >= 1");
    require(opts.record_every >= 1, "sync_mc needs record_every >= 1");

    std::vector<std::uint64_t> record_times;
    for (std::uint64_t t = 0; t <= opts.horizon; t += opts.record_every) record_times.push_back(t);
    if (record_times.back() != opts.horizon) record_times.push_back(opts.horizon);
    const std::uint64_t window_start = opts.horizon >= opts.window ? opts.horizon - opts.window + 1 : 1;

    struct Sample {
        bool synced;
        double hit_time; // NaN when never below eps
        std::vector<double> recorded;
    };
    const std::size_t n = opts.n_samples;
    auto samples = map_indices<Sample>(pairs.size() * n, policy, [&](std::size_t idx) {
        const std::size_t p = idx / n, s = idx % n;
        const NoiseStream omega = sample_stream(seed, kTagSync, p, s);
        CirclePoint x = pairs[p].first, y = pairs[p].second;
        Sample out{true, std::numeric_limits<double>::quiet_NaN(), {}};
        out.recorded.reserve(record_times.size());
        double d = circle_dist(x, y);
        std::size_t next_record = 0;
        auto record = [&](std::uint64_t t) {
            if (next_record < record_times.size() && record_times[next_record] == t) {
                out.recorded.push_back(d);
                ++next_record;
            }
        };
        if (d < opts.eps_sync) out.hit_time = 0.0;
        record(0);
        for (std::uint64_t t = 1; t <= opts.horizon; ++t) {
            const double alpha = omega.draw(t);
            x = sys.step(alpha, x);
            y = sys.step(alpha, y);
            d = circle_dist(x, y);
            if (std::isnan(out.hit_time) && d < opts.eps_sync) out.hit_time = static_cast<double>(t);
            if (t >= window_start && !(d < opts.eps_sync)) out.synced = false;
            record(t);
        }
        return out;
    });

    std::vector<SyncResult> results;
    results.reserve(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        SyncResult r;
        r.pair = pairs[p];
        std::size_t synced = 0;
        std::vector<double> hit_times;
        for (std::size_t s = 0; s < n; ++s) {
            const Sample& smp = samples[p * n + s];
            synced += smp.synced ? 1 : 0;
            if (!std::isnan(smp.hit_time)) hit_times.push_back(smp.hit_time);
        }
        r.p_synced = EstimateCI::bernoulli(synced, n, "monte_carlo");
        if (!hit_times.empty()) r.median_hit_time = quantile(hit_times, 0.5);
        for (std::size_t k = 0; k < record_times.size(); ++k) {
            std::vector<double> dists;
            dists.reserve(n);
            for (std::size_t s = 0; s < n; ++s) dists.push_back(samples[p * n + s].recorded[k]);
            r.decay_curve.push_back({record_times[k], quantile(std::move(dists), 0.5)});
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::vector<EstimateCI> stability_probe(const RandomMapSystem& sys, CirclePoint x, const std::vector<double>& radii,
                                        const StabilityOptions& opts, std::uint64_t seed, const ExecPolicy& policy) {
    for (double r : radii) require(r > 0.0 && r < 0.25, "stability_probe radii must lie in (0, 1/4)");
    require(opts.arc_points >= 2, "stability_probe needs at least 2 arc points");

    const std::size_t n = opts.n_samples;
    auto contracted = map_indices<char>(radii.size() * n, policy, [&](std::size_t idx) -> char {
        const std::size_t ri = idx / n, s = idx % n;
        const NoiseStream omega = sample_stream(seed, kTagStability, 0, s);
        TrajectoryEnsemble ball = TrajectoryEnsemble::arc(x, radii[ri], opts.arc_points);
        for (std::uint64_t t = 1; t <= opts.horizon; ++t) {
            const double alpha = omega.draw(t);
            for (CirclePoint& p : ball.points) p = sys.step(alpha, p);
        }
        return ball.diameter() < opts.eps_sync ? 1 : 0;
    });

    std::vector<EstimateCI> out;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        std::size_t count = 0;
        for (std::size_t s = 0; s < n; ++s) count += contracted[ri * n + s] ? 1 : 0;
        out.push_back(EstimateCI::bernoulli(count, n, fmt::format("monte_carlo r={}", radii[ri])));
    }
    return out;
}

EstimateCI containment_probe(const RandomMapSystem& sys, CirclePoint x, double eps, double delta,
                             const ContainmentOptions& opts, std::uint64_t seed, const ExecPolicy& policy) {
    require(delta > 0.0 && delta <= eps, "containment_probe needs 0 < delta <= eps");
    require(opts.arc_points >= 2, "containment_probe needs at least 2 arc points");

    const double bound = eps + opts.slack;
    auto contained = map_indices<char>(opts.n_samples, policy, [&](std::size_t s) -> char {
        const NoiseStream omega = sample_stream(seed, kTagContainment, 0, s);
        TrajectoryEnsemble ball = TrajectoryEnsemble::arc(x, delta, opts.arc_points);
        CirclePoint center = x;
        auto within = [&] {
            for (CirclePoint p : ball.points)
                if (circle_dist(center, p) > bound) return false;
            return true;
        };
        if (!within()) return 0;
        for (std::uint64_t t = 1; t <= opts.horizon; ++t) {
            const double alpha = omega.draw(t);
            center = sys.step(alpha, center);
            for (CirclePoint& p : ball.points) p = sys.step(alpha, p);
            if (!within()) return 0;
        }
        return 1;
    });

    std::size_t count = 0;
    for (char c : contained) count += c ? 1 : 0;
    return EstimateCI::bernoulli(count, opts.n_samples, fmt::format("monte_carlo eps={} delta={}", eps, delta));
}

double occupation_ks(const RandomMapSystem& sys, const NoiseStream& omega, CirclePoint x0, std::uint64_t n_steps) {
    require(n_steps >= 1, "occupation_ks needs n_steps >= 1");
    std::vector<double> pos;
    pos.reserve(n_steps);
    CirclePoint x = x0;
    for (std::uint64_t k = 1; k <= n_steps; ++k) {
        x = sys.step(omega.draw(k), x);
        pos.push_back(x.pos());
    }
    std::sort(pos.begin(), pos.end());
    const double n = static_cast<double>(pos.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        ks = std::max({ks, (static_cast<double>(i) + 1.0) / n - pos[i], pos[i] - static_cast<double>(i) / n});
    }
    return ks;
}

std::vector<PointPair> low_discrepancy_pairs(std::size_t count) {
    // R2 sequence (plastic-number recurrence): first coordinate places x,
    // second sets the separation in (0, 1/2].
    const double g = 1.32471795724474602596;
    const double a1 = 1.0 / g, a2 = 1.0 / (g * g);
    std::vector<PointPair> out;
    out.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        double u = CirclePoint::canonical(0.5 + a1 * static_cast<double>(i));
        double v = CirclePoint::canonical(0.5 + a2 * static_cast<double>(i));
        double sep = 0.5 * (1.0 - v); // (0, 1/2]
        out.emplace_back(CirclePoint(u), CirclePoint(u + sep));
    }
    return out;
}

} // namespace rds
