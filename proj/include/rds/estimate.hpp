#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

namespace rds {

/// Point estimate with its standard error.
struct EstimateCI {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::string method;

    /// Proportion estimate with stderr sqrt(p(1-p)/n).
    static EstimateCI bernoulli(std::size_t successes, std::size_t n, std::string method);
    /// Sample mean with stderr s/sqrt(n).
    static EstimateCI mean_of(std::span<const double> samples, std::string method);

    double upper(double z = 3.0) const noexcept { return value + z * std_error; }
    double lower(double z = 3.0) const noexcept { return value - z * std_error; }
};

inline double joint_stderr(const EstimateCI& a, const EstimateCI& b) noexcept {
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

inline EstimateCI EstimateCI::bernoulli(std::size_t successes, std::size_t n, std::string method) {
    EstimateCI e;
    e.n_samples = n;
    e.method = std::move(method);
    if (n == 0) return e;
    e.value = static_cast<double>(successes) / static_cast<double>(n);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
    return e;
}

inline EstimateCI EstimateCI::mean_of(std::span<const double> samples, std::string method) {
    EstimateCI e;
    e.n_samples = samples.size();
    e.method = std::move(method);
    if (samples.empty()) return e;
    double sum = 0.0;
    for (double s : samples) sum += s;
    const double n = static_cast<double>(samples.size());
    e.value = sum / n;
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double s : samples) ss += (s - e.value) * (s - e.value);
        e.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return e;
}

} // namespace rds
