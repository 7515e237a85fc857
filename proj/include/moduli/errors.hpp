#pragma once

#include <stdexcept>
#include <string>

namespace moduli {

// Bad input: a caller handed us parameters outside an operation's domain.
// CLI maps this to exit code 2 and the message always names the parameter.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A cross-check that must hold by construction failed (two independent
// computations of the same quantity disagree, a resolved circle carries two
// labels, ...). Always a bug, never user error. CLI maps this to exit 3.
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

// An injected evaluation table was asked for a value it does not carry.
// Deliberately distinct from "the value is zero".
struct UnsupportedError : DomainError {
    explicit UnsupportedError(const std::string& what) : DomainError(what) {}
};

} // namespace moduli
