#include "rds/subperiod.hpp"

#include "rds/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <numeric>

namespace rds {

namespace {

SubperiodReport make_report(int n, SubperiodReport::Method method) {
    SubperiodReport r;
    r.least_period_count = n;
    r.method = method;
    if (n != SubperiodReport::kContinuum)
        for (int k = 1; k < n; ++k) r.subperiods.push_back(static_cast<double>(k) / n);
    return r;
}

// sup over the grid of |g(x + shift) - g(x)|, abandoned once it reaches `stop`.
double shift_defect(const LiftMap& lift, const std::vector<double>& g, double shift, double stop) {
    const std::size_t m = g.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double x = static_cast<double>(i) / static_cast<double>(m);
        worst = std::max(worst, std::fabs(lift.displacement(x + shift) - g[i]));
        if (worst >= stop) break;
    }
    return worst;
}

SubperiodReport grid_check(const LiftMap& lift, int grid_size, double tol) {
    std::vector<double> g(static_cast<std::size_t>(grid_size));
    for (int i = 0; i < grid_size; ++i) g[i] = lift.displacement(static_cast<double>(i) / grid_size);

    // An irrational shift leaves g invariant only if g is constant.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    if (shift_defect(lift, g, golden, tol) < tol)
        return make_report(SubperiodReport::kContinuum, SubperiodReport::Method::GridCheck);

    // Subperiods of a non-constant g form {k/n}; n is the largest q with 1/q a period.
    int n = 1;
    for (int q = 2; q <= grid_size; ++q)
        if (shift_defect(lift, g, 1.0 / q, tol) < tol) n = q;
    return make_report(n, SubperiodReport::Method::GridCheck);
}

} // namespace

SubperiodReport detect_subperiods(const LiftMap& lift, const SubperiodOptions& opts) {
    if (opts.grid_size < 256) throw DomainError(fmt::format("grid_size {} < 256", opts.grid_size));
    if (!(opts.tol > 0.0)) throw DomainError("subperiod tolerance must be positive");

    if (lift.kind() == LiftMap::Kind::Rotation)
        return make_report(SubperiodReport::kContinuum, opts.exact ? SubperiodReport::Method::ExactFourier
                                                                   : SubperiodReport::Method::GridCheck);
    if (!opts.exact) return grid_check(lift, opts.grid_size, opts.tol);

    int n = 0;
    for (const Harmonic& h : lift.harmonics())
        if (h.active()) n = std::gcd(n, h.j);
    if (n == 0) return make_report(SubperiodReport::kContinuum, SubperiodReport::Method::ExactFourier);
    return make_report(n, SubperiodReport::Method::ExactFourier);
}

LiftMap conjugate_lift(const LiftMap& lift, double beta) {
    if (lift.kind() == LiftMap::Kind::Rotation) return lift;
    // a sin(w(x+beta)) + b cos(w(x+beta)) = (a cos wb - b sin wb) sin wx + (a sin wb + b cos wb) cos wx
    std::vector<Harmonic> out;
    for (const Harmonic& h : lift.harmonics()) {
        double wb = 2.0 * std::numbers::pi * h.j * beta;
        double s = std::sin(wb), c = std::cos(wb);
        out.push_back({h.j, h.sin_coeff * c - h.cos_coeff * s, h.sin_coeff * s + h.cos_coeff * c});
    }
    return LiftMap::fourier(std::move(out));
}

} // namespace rds
