#pragma once

#include "rds/lift.hpp"

#include <limits>
#include <vector>

namespace rds {

/// Set of alpha in (0,1) with f_alpha = f, i.e. the periods of g(x) = F(x) - x.
///
/// For a non-constant g the subperiods form the cyclic group {k/n : 1 <= k < n},
/// so the report is determined by the least period count n (n = 1 means no
/// subperiods). A constant g (a rotation) has every alpha as a subperiod; that
/// case is reported with `least_period_count == kContinuum` and an empty list.
struct SubperiodReport {
    enum class Method { ExactFourier, GridCheck };

    static constexpr int kContinuum = std::numeric_limits<int>::max();

    std::vector<double> subperiods;
    int least_period_count = 1;
    Method method = Method::ExactFourier;

    bool is_continuum() const noexcept { return least_period_count == kContinuum; }
    bool has_subperiods() const noexcept { return least_period_count != 1; }
};

struct SubperiodOptions {
    int grid_size = 4096;
    double tol = 1e-9;
    /// Use the gcd-of-harmonics rule for Fourier lifts; false forces the grid scan.
    bool exact = true;
};

SubperiodReport detect_subperiods(const LiftMap& lift, const SubperiodOptions& opts = {});

/// Lift of the conjugated map f_beta: x -> F(x + beta) - beta.
LiftMap conjugate_lift(const LiftMap& lift, double beta);

} // namespace rds
