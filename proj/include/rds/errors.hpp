#pragma once

#include <stdexcept>
#include <string>

namespace rds {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical estimate could not reach its requested accuracy.
class EstimationError : public std::runtime_error {
public:
    EstimationError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// Two independent routes to the same quantity disagree.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rds
