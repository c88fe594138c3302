#pragma once
#include <stdexcept>
#include <string>

namespace percrit {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// argument sits on a pole (Gamma at non-positive integers, vanishing denominators)
struct PoleError : DomainError {
    using DomainError::DomainError;
};

struct OutOfAnnulusError : DomainError {
    using DomainError::DomainError;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergenceError : ConvergenceError {
    using ConvergenceError::ConvergenceError;
};

// a derivative of higher order than a function declared
struct CapabilityError : std::logic_error {
    using std::logic_error::logic_error;
};

struct MomentumViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace percrit
