#pragma once

#include <stdexcept>
#include <string>

namespace umbrella {

/// Configuration-level failure: a table spec or query that cannot be realized.
struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

/// Base for failures of a numerical procedure on valid input.
struct ComputationError : std::runtime_error {
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

struct NotPeriodic : ComputationError {
    explicit NotPeriodic(const std::string& what) : ComputationError(what) {}
};

struct NoConvergence : ComputationError {
    explicit NoConvergence(const std::string& what) : ComputationError(what) {}
};

struct SingularOrbit : ComputationError {
    explicit SingularOrbit(const std::string& what) : ComputationError(what) {}
};

struct NotFound : ComputationError {
    explicit NotFound(const std::string& what) : ComputationError(what) {}
};

struct NoTransition : ComputationError {
    explicit NoTransition(const std::string& what) : ComputationError(what) {}
};

struct DegenerateSeed : ComputationError {
    explicit DegenerateSeed(const std::string& what) : ComputationError(what) {}
};

}  // namespace umbrella
