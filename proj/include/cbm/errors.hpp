#pragma once

#include <stdexcept>

namespace cbm {

/// Argument outside the domain of a numeric routine or model operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Root solver could not bracket or converge.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario configuration is missing a key, mistyped, or violates an invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Life-cycle simulation could not complete (e.g. emergency re-enquiry cap hit).
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Output could not be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cbm
