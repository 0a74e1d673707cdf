#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hvsl {

/// Base class of every error raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad grid extents, unknown keys, violated model conditions.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A 1D advection kernel was handed data it cannot process.
class KernelError : public Error {
public:
    using Error::Error;
};

/// The discrete state violates a physical requirement (e.g. non-positive density).
class StateError : public Error {
public:
    using Error::Error;
};

/// The rotation angle dt*|B| hits a resonance 2k*pi where the averaging matrix is singular.
class StepSizeError : public Error {
public:
    using Error::Error;
};

/// Picard iteration on the field unknowns did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}

    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

/// File-system or format failure while reading/writing artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hvsl
