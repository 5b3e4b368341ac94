#include "rds/lift.hpp"

#include "rds/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rds {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduced phase of j*x in [0,1), so sin/cos arguments stay small.
double phase(int j, double x) noexcept {
    double t = j * x;
    return t - std::floor(t);
}

} // namespace

LiftMap LiftMap::rotation(double c) {
    if (!std::isfinite(c)) throw DomainError("rotation offset must be finite");
    return LiftMap(Kind::Rotation, c, {});
}

LiftMap LiftMap::fourier(std::vector<Harmonic> harmonics) {
    std::sort(harmonics.begin(), harmonics.end(),
              [](const Harmonic& a, const Harmonic& b) { return a.j < b.j; });
    for (std::size_t i = 0; i < harmonics.size(); ++i) {
        const Harmonic& h = harmonics[i];
        if (h.j <= 0)
            throw DomainError(fmt::format("harmonic index must be positive, got {}", h.j));
        if (!std::isfinite(h.sin_coeff) || !std::isfinite(h.cos_coeff))
            throw DomainError(fmt::format("harmonic {} has a non-finite coefficient", h.j));
        if (i > 0 && harmonics[i - 1].j == h.j)
            throw DomainError(fmt::format("duplicate harmonic index {}", h.j));
    }
    return LiftMap(Kind::Fourier, 0.0, std::move(harmonics));
}

LiftMap LiftMap::sine(double a) { return fourier({Harmonic{1, a, 0.0}}); }

double LiftMap::displacement(double x) const noexcept {
    if (kind_ == Kind::Rotation) return offset_;
    double g = 0.0;
    for (const Harmonic& h : harmonics_) {
        double theta = kTwoPi * phase(h.j, x);
        g += h.sin_coeff * std::sin(theta) + h.cos_coeff * std::cos(theta);
    }
    return g;
}

double LiftMap::derivative(double x, int order) const noexcept {
    if (kind_ == Kind::Rotation) return order == 1 ? 1.0 : 0.0;
    // d^k/dx^k [a sin(w x) + b cos(w x)] = w^k [a sin(w x + k pi/2) + b cos(w x + k pi/2)]
    const int quarter = order % 4;
    double sum = 0.0;
    for (const Harmonic& h : harmonics_) {
        double theta = kTwoPi * phase(h.j, x);
        double s = std::sin(theta);
        double c = std::cos(theta);
        double sk = 0.0, ck = 0.0; // sin(theta + k pi/2), cos(theta + k pi/2)
        switch (quarter) {
        case 0: sk = s; ck = c; break;
        case 1: sk = c; ck = -s; break;
        case 2: sk = -s; ck = -c; break;
        default: sk = -c; ck = s; break;
        }
        sum += std::pow(kTwoPi * h.j, order) * (h.sin_coeff * sk + h.cos_coeff * ck);
    }
    return order == 1 ? 1.0 + sum : sum;
}

int LiftMap::max_harmonic() const noexcept {
    int m = 0;
    for (const Harmonic& h : harmonics_)
        if (h.active()) m = std::max(m, h.j);
    return m;
}

std::string LiftMap::describe() const {
    if (kind_ == Kind::Rotation) return fmt::format("rotation(c={})", offset_);
    std::string out = "fourier[";
    for (std::size_t i = 0; i < harmonics_.size(); ++i) {
        const Harmonic& h = harmonics_[i];
        out += fmt::format("{}({}, {}, {})", i ? ", " : "", h.j, h.sin_coeff, h.cos_coeff);
    }
    return out + "]";
}

CirclePoint apply_randomized_map(const LiftMap& lift, double alpha, CirclePoint x) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw DomainError(fmt::format("noise parameter {} outside [0,1)", alpha));
    // F(x + alpha) - alpha = x + g(x + alpha); for rotations f_alpha = f exactly.
    if (lift.kind() == LiftMap::Kind::Rotation) return CirclePoint(x.pos() + lift.rotation_offset());
    return CirclePoint(x.pos() + lift.displacement(x.pos() + alpha));
}

double map_derivative(const LiftMap& lift, double alpha, CirclePoint x) noexcept {
    return lift.derivative(x.pos() + alpha);
}

} // namespace rds
