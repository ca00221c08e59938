#pragma once

#include <stdexcept>
#include <string>

namespace calogero {

// argument outside the mathematical domain of a function
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// caller violated a precondition (bad window, mismatched spec, ...)
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedOrder : std::domain_error {
    using std::domain_error::domain_error;
};

// numerically ill-posed evaluation, e.g. u(c) close to a node
struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace calogero
