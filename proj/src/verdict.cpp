#include "rds/verdict.hpp"

#include "rds/errors.hpp"
#include "rds/quadrature.hpp"

#include <fmt/format.h>

#include <cmath>

namespace rds {

std::string to_string(SyncVerdict::Outcome outcome) {
    switch (outcome) {
    case SyncVerdict::Outcome::StablySynchronising: return "StablySynchronising";
    case SyncVerdict::Outcome::NotSynchronising: return "NotSynchronising";
    case SyncVerdict::Outcome::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::optional<std::pair<long, long>> rational_approximation(double c, long max_denominator, double tol) {
    // Continued-fraction convergents of the fractional part.
    const double frac = c - std::floor(c);
    const long whole = static_cast<long>(std::floor(c));
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = frac;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(x);
        const long ai = static_cast<long>(a);
        const long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_denominator) break;
        if (std::fabs(frac - static_cast<double>(p2) / static_cast<double>(q2)) <= tol)
            return std::make_pair(p2 + whole * q2, q2);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double rem = x - a;
        if (rem <= 0.0) break;
        x = 1.0 / rem;
    }
    return std::nullopt;
}

SyncVerdict render_verdict(const RandomMapSystem& sys, const VerdictConfig& cfg, const ExecPolicy& policy) {
    SyncVerdict v;
    v.caveats.push_back("conditions (i)/(ii) verified empirically, not proved");
    v.subperiods = detect_subperiods(sys.lift, cfg.subperiods);

    // (i) minimality: exact failure for rational rotations, otherwise accessibility evidence.
    bool rational_rotation = false;
    if (sys.lift.kind() == LiftMap::Kind::Rotation || sys.lift.max_harmonic() == 0) {
        const double c = sys.lift.kind() == LiftMap::Kind::Rotation ? sys.lift.rotation_offset() : 0.0;
        if (auto pq = rational_approximation(c, cfg.max_denominator, cfg.rational_tol)) {
            rational_rotation = true;
            v.minimality.note = fmt::format("rational rotation {}/{}", pq->first, pq->second);
        }
    }
    const AccessibilityMatrix access =
        accessibility_probe(sys, cfg.n_sources, cfg.n_arcs, cfg.access, cfg.seed, policy);
    v.minimality.estimate = EstimateCI{access.min_probability(), 0.0, cfg.access.n_samples,
                                       fmt::format("accessibility {}x{} min entry", cfg.n_sources, cfg.n_arcs)};
    for (const EstimateCI& e : access.entries)
        if (e.value == access.min_probability()) {
            v.minimality.estimate.std_error = e.std_error;
            break;
        }
    if (rational_rotation) {
        v.minimality.exact_failure = true;
        v.minimality.pass = false;
    } else {
        v.minimality.pass = access.min_probability() > 0.0;
        if (v.minimality.note.empty()) v.minimality.note = "accessibility surrogate";
    }

    // (ii) two-point contractibility: exact failure when a subperiod exists.
    std::vector<PointPair> pairs = low_discrepancy_pairs(cfg.n_pairs);
    pairs.emplace_back(CirclePoint(0.0), CirclePoint(0.5));
    const auto contract = contractibility_test(sys, pairs, cfg.contract, cfg.seed, policy);
    std::size_t worst = 0;
    for (std::size_t i = 1; i < contract.size(); ++i)
        if (contract[i].probability.value < contract[worst].probability.value) worst = i;
    v.contractibility.estimate = contract[worst].probability;
    v.contractibility.estimate.method = fmt::format("contractibility {} pairs min", pairs.size());
    if (v.subperiods.has_subperiods()) {
        v.contractibility.exact_failure = true;
        v.contractibility.pass = false;
        v.contractibility.note = v.subperiods.is_continuum()
                                     ? std::string("every alpha is a subperiod")
                                     : fmt::format("subperiod 1/{}", v.subperiods.least_period_count);
    } else {
        v.contractibility.pass = contract[worst].probability.value > 0.0;
        v.contractibility.note = "no subperiods (exact); contraction observed empirically";
    }

    // (iii) stable trajectories via the negative-exponent test.
    v.stable_trajectories.lambda_quadrature = lyapunov_quadrature(sys.lift, cfg.quad_tol);
    v.stable_trajectories.lambda_mc =
        lyapunov_mc(sys, cfg.lyapunov_steps, cfg.lyapunov_samples, cfg.seed, policy).estimate;
    const double gap = std::fabs(v.stable_trajectories.lambda_mc.value - v.stable_trajectories.lambda_quadrature);
    if (gap > cfg.consistency_z * v.stable_trajectories.lambda_mc.std_error + 10.0 * cfg.quad_tol)
        throw ConsistencyError(fmt::format("Lyapunov exponent mismatch: quadrature {} vs Monte Carlo {} +- {}",
                                           v.stable_trajectories.lambda_quadrature,
                                           v.stable_trajectories.lambda_mc.value,
                                           v.stable_trajectories.lambda_mc.std_error));
    v.stable_trajectories.pass = v.stable_trajectories.lambda_quadrature < 0.0;

    if (v.minimality.exact_failure || v.contractibility.exact_failure)
        v.verdict = SyncVerdict::Outcome::NotSynchronising;
    else if (v.minimality.pass && v.contractibility.pass && v.stable_trajectories.pass)
        v.verdict = SyncVerdict::Outcome::StablySynchronising;
    else
        v.verdict = SyncVerdict::Outcome::Inconclusive;

    v.caveats.push_back(fmt::format("finite horizons: access T={}, contract T={}, lyapunov {} steps x {} samples",
                                    cfg.access.horizon, cfg.contract.horizon, cfg.lyapunov_steps,
                                    cfg.lyapunov_samples));
    if (v.verdict == SyncVerdict::Outcome::Inconclusive && !v.stable_trajectories.pass)
        v.caveats.push_back("lambda >= 0: negative-exponent test does not apply");
    return v;
}

} // namespace rds
