#pragma once

#include "rds/circle.hpp"

#include <string>
#include <vector>

namespace rds {

/// One term a*sin(2*pi*j*x) + b*cos(2*pi*j*x) of a Fourier lift.
struct Harmonic {
    int j = 1;
    double sin_coeff = 0.0;
    double cos_coeff = 0.0;

    bool active() const noexcept { return sin_coeff != 0.0 || cos_coeff != 0.0; }
    friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// A degree-1 lift F: R -> R of a circle map f, i.e. F(x+1) = F(x) + 1.
///
/// Two families are supported: rigid rotations F(x) = x + c, and finite
/// Fourier perturbations of the identity
///
///     F(x) = x + sum_j a_j sin(2 pi j x) + b_j cos(2 pi j x).
///
/// Harmonics are kept sorted by index; duplicate or non-positive indices are
/// rejected at construction.
class LiftMap {
public:
    enum class Kind { Rotation, Fourier };

    static LiftMap rotation(double c);
    static LiftMap fourier(std::vector<Harmonic> harmonics);
    /// F(x) = x + a sin(2 pi x).
    static LiftMap sine(double a);

    Kind kind() const noexcept { return kind_; }
    double rotation_offset() const noexcept { return offset_; }
    const std::vector<Harmonic>& harmonics() const noexcept { return harmonics_; }

    /// g(x) = F(x) - x, a 1-periodic function.
    double displacement(double x) const noexcept;
    /// F(x).
    double operator()(double x) const noexcept { return x + displacement(x); }
    /// k-th derivative of F at x, k >= 1.
    double derivative(double x, int order = 1) const noexcept;

    /// Largest active harmonic index (0 for rotations and the identity).
    int max_harmonic() const noexcept;

    /// Human-readable form, e.g. "fourier[(1,0.1,0)]".
    std::string describe() const;

    friend bool operator==(const LiftMap&, const LiftMap&) = default;

private:
    LiftMap(Kind kind, double offset, std::vector<Harmonic> harmonics)
        : kind_(kind), offset_(offset), harmonics_(std::move(harmonics)) {}

    Kind kind_;
    double offset_;
    std::vector<Harmonic> harmonics_;
};

/// f_alpha([x]) = [F(x + alpha) - alpha]; throws DomainError unless alpha in [0,1).
CirclePoint apply_randomized_map(const LiftMap& lift, double alpha, CirclePoint x);

/// Chain-rule factor f_alpha'([x]) = F'(x + alpha).
double map_derivative(const LiftMap& lift, double alpha, CirclePoint x) noexcept;

} // namespace rds
