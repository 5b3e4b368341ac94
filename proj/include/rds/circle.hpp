#pragma once

#include <cmath>

namespace rds {

/// A point of the circle R/Z, stored as its canonical representative in [0,1).
class CirclePoint {
public:
    constexpr CirclePoint() = default;

    /// Canonicalizes any real x to x - floor(x).
    explicit CirclePoint(double x) : pos_(canonical(x)) {}

    double pos() const noexcept { return pos_; }

    static double canonical(double x) noexcept {
        double p = x - std::floor(x);
        // x slightly below an integer can round up to exactly 1.
        return p < 1.0 ? p : 0.0;
    }

    friend bool operator==(CirclePoint a, CirclePoint b) noexcept { return a.pos_ == b.pos_; }

private:
    double pos_ = 0.0;
};

/// Geodesic distance on R/Z; the diameter of the circle under this metric is 1/2.
inline double circle_dist(CirclePoint x, CirclePoint y) noexcept {
    double d = std::fabs(x.pos() - y.pos());
    return d < 1.0 - d ? d : 1.0 - d;
}

/// Rigid rotation by c.
inline CirclePoint rotate(CirclePoint x, double c) noexcept { return CirclePoint(x.pos() + c); }

} // namespace rds
