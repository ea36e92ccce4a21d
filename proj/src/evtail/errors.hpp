#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evt {

/// Base of every error thrown by the core library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid model, driver or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input without enough variation for the requested statistic.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Kesten equation E A^kappa = 1 has no root in the search range.
class NoRootError : public Error {
public:
    using Error::Error;
};

/// Truncated walk horizon leaves more mass than the configured tolerance.
class HorizonError : public Error {
public:
    using Error::Error;
};

/// A simulated recursion produced a non-finite value.
class SimulationError : public Error {
public:
    SimulationError(const std::string& what, std::size_t step)
        : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace evt
