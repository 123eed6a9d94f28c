#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nilmult {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A hypothesis of the multiplier formulas (prime condition, divisibility chain, ...) does not hold.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(const std::string& what, std::vector<std::string> violations = {})
        : std::runtime_error(what), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// A configured resource cap (basis size, subgroup size) would be exceeded.
class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The request is well-formed but outside what the oracle can do (e.g. infinite groups).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nilmult
