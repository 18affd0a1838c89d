#pragma once

#include <stdexcept>
#include <string>

namespace weyl {

// Base for every error raised by the toolkit. The CLI maps the concrete
// type onto an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

// A precondition on an argument failed (bad dimension, negative radius, ...).
class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain"; }
};

// A spectral query asked for eigenvalues above the cutoff of the spectrum.
class CompletenessError : public Error {
public:
    CompletenessError(double threshold, double cutoff);
    double threshold;
    double cutoff;
    const char* kind() const noexcept override { return "completeness"; }
};

// Eigenvalue count or memory would exceed the configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "resource"; }
};

// A numerical procedure did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double estimate, double achieved);
    double estimate;
    double achieved;
    const char* kind() const noexcept override { return "convergence"; }
};

// Not enough usable data for a regression.
class FitError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "fit"; }
};

// A mathematical invariant was observed to fail (e.g. negative Berezin margin).
class InvariantViolation : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invariant"; }
};

// Two independent evaluations of the same quantity disagree.
class ConsistencyError : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
    const char* kind() const noexcept override { return "consistency"; }
};

} // namespace weyl
