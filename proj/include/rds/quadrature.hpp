#pragma once

#include "rds/lift.hpp"

#include <vector>

namespace rds {

struct QuadratureOptions {
    double tol = 1e-8;
    int panel_budget = 200000;
};

/// A located zero of F' and the local model used to integrate across it.
struct CriticalZero {
    double x = 0.0;
    int multiplicity = 1;
    /// Leading Taylor coefficient: F'(x + t) ~ coefficient * t^multiplicity.
    double coefficient = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    int panels = 0;
    std::vector<CriticalZero> zeros;
};

/// lambda_f = integral over [0,1] of log|F'(y)| dy (nats per step).
///
/// Zeros of F' are located on a grid and refined by bisection. The integrand
/// is split at every zero and at every critical point of F'; a small symmetric
/// window around each zero is integrated from the local Taylor model
/// |F'| ~ |c| |t|^m, and the remainder by adaptive Gauss-Legendre bisection.
/// Throws EstimationError when the panel budget is exhausted.
QuadratureResult lyapunov_quadrature_detailed(const LiftMap& lift, const QuadratureOptions& opts = {});

inline double lyapunov_quadrature(const LiftMap& lift, double tol = 1e-8) {
    return lyapunov_quadrature_detailed(lift, {.tol = tol}).value;
}

} // namespace rds
