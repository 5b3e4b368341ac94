#include "rds/quadrature.hpp"

#include "rds/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

namespace rds {

namespace {

constexpr int kGaussOrder = 10;

struct GaussRule {
    std::array<double, kGaussOrder> nodes{};
    std::array<double, kGaussOrder> weights{};
};

// Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n.
GaussRule make_gauss_rule() {
    GaussRule rule;
    constexpr int n = kGaussOrder;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule& gauss_rule() {
    static const GaussRule rule = make_gauss_rule();
    return rule;
}

template <class Fn>
double gauss(const Fn& f, double lo, double hi) {
    const GaussRule& r = gauss_rule();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < kGaussOrder; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

template <class Fn>
double bisect_root(const Fn& f, double lo, double hi) {
    double flo = f(lo);
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Upper bound of |F^(k+1)| over the circle.
double derivative_scale(const LiftMap& lift, int k) {
    double s = 0.0;
    for (const Harmonic& h : lift.harmonics())
        s += std::pow(2.0 * std::numbers::pi * h.j, k + 1) * (std::fabs(h.sin_coeff) + std::fabs(h.cos_coeff));
    return s;
}

std::vector<double> locate_breakpoints(const LiftMap& lift) {
    const int grid = 2048 * std::max(1, lift.max_harmonic());
    auto d1 = [&](double x) { return lift.derivative(x, 1); };
    auto d2 = [&](double x) { return lift.derivative(x, 2); };

    std::vector<double> pts;
    double x0 = 0.0, f0 = d1(0.0), g0 = d2(0.0);
    if (f0 == 0.0) pts.push_back(0.0);
    for (int i = 1; i <= grid; ++i) {
        double x1 = static_cast<double>(i) / grid;
        double f1 = d1(x1), g1 = d2(x1);
        if (f1 == 0.0 && i < grid) pts.push_back(x1);
        if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) pts.push_back(bisect_root(d1, x0, x1));
        if ((g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0)) pts.push_back(bisect_root(d2, x0, x1));
        x0 = x1;
        f0 = f1;
        g0 = g1;
    }
    for (double& p : pts) p = CirclePoint::canonical(p);
    std::sort(pts.begin(), pts.end());

    // Merge near-duplicates, keeping the candidate with the smallest |F'|.
    std::vector<double> merged;
    for (double p : pts) {
        if (!merged.empty() && p - merged.back() < 1e-10) {
            if (std::fabs(d1(p)) < std::fabs(d1(merged.back()))) merged.back() = p;
            continue;
        }
        merged.push_back(p);
    }
    if (merged.size() > 1 && merged.front() + 1.0 - merged.back() < 1e-10) {
        if (std::fabs(d1(merged.back())) < std::fabs(d1(merged.front()))) merged.front() = merged.back();
        merged.pop_back();
    }
    return merged;
}

std::optional<CriticalZero> classify(const LiftMap& lift, double x) {
    const double zero_eps = 1e-12 * (1.0 + derivative_scale(lift, 0));
    if (std::fabs(lift.derivative(x, 1)) > zero_eps) return std::nullopt;
    double factorial = 1.0;
    for (int m = 1; m <= 8; ++m) {
        factorial *= m;
        double dm = lift.derivative(x, m + 1);
        if (std::fabs(dm) > 1e-7 * derivative_scale(lift, m))
            return CriticalZero{x, m, dm / factorial};
    }
    throw EstimationError(fmt::format("F' vanishes to order > 8 at x = {}", x), INFINITY);
}

} // namespace

QuadratureResult lyapunov_quadrature_detailed(const LiftMap& lift, const QuadratureOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("quadrature tolerance must be positive");

    QuadratureResult result;
    if (lift.kind() == LiftMap::Kind::Rotation || lift.max_harmonic() == 0) return result;

    auto integrand = [&](double y) { return std::log(std::fabs(lift.derivative(y, 1))); };

    // Segments [lo, hi] covering one period, with singular windows excised.
    struct Segment { double lo, hi; };
    std::vector<Segment> segments;
    std::vector<double> breaks;
    if (derivative_scale(lift, 0) < 1.0) {
        segments.push_back({0.0, 1.0});
    } else {
        breaks = locate_breakpoints(lift);
        if (breaks.empty()) {
            segments.push_back({0.0, 1.0});
        } else {
            double min_gap = 1.0;
            for (std::size_t i = 0; i + 1 < breaks.size(); ++i) min_gap = std::min(min_gap, breaks[i + 1] - breaks[i]);
            min_gap = std::min(min_gap, breaks.front() + 1.0 - breaks.back());
            const double window = std::min(1e-5, 0.25 * min_gap);

            std::vector<double> half(breaks.size(), 0.0);
            for (std::size_t i = 0; i < breaks.size(); ++i) {
                if (auto z = classify(lift, breaks[i])) {
                    half[i] = window;
                    result.zeros.push_back(*z);
                    // integral over |t| < w of log|c| + m log|t|
                    result.value += 2.0 * window * (std::log(std::fabs(z->coefficient)) +
                                                    z->multiplicity * (std::log(window) - 1.0));
                }
            }
            for (std::size_t i = 0; i < breaks.size(); ++i) {
                std::size_t next = (i + 1) % breaks.size();
                double hi = breaks[next] + (next == 0 ? 1.0 : 0.0);
                segments.push_back({breaks[i] + half[i], hi - half[next]});
            }
        }
    }

    // Adaptive bisection; each panel gets a share of tol proportional to its width.
    struct Panel { double lo, hi, estimate; };
    std::vector<Panel> stack;
    for (const Segment& s : segments)
        if (s.hi > s.lo) stack.push_back({s.lo, s.hi, gauss(integrand, s.lo, s.hi)});

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        ++result.panels;
        double mid = 0.5 * (p.lo + p.hi);
        double left = gauss(integrand, p.lo, mid);
        double right = gauss(integrand, mid, p.hi);
        double diff = std::fabs(left + right - p.estimate);
        if (diff <= opts.tol * (p.hi - p.lo) || mid <= p.lo || mid >= p.hi) {
            result.value += left + right;
            result.error_bound += diff;
            continue;
        }
        if (result.panels >= opts.panel_budget) {
            double outstanding = diff;
            for (const Panel& q : stack) outstanding += opts.tol * (q.hi - q.lo);
            throw EstimationError(fmt::format("quadrature exceeded {} panels", opts.panel_budget),
                                  result.error_bound + outstanding);
        }
        stack.push_back({p.lo, mid, left});
        stack.push_back({mid, p.hi, right});
    }
    return result;
}

} // namespace rds
