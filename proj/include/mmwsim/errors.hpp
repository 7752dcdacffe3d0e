#pragma once

#include <stdexcept>
#include <string>

namespace mmwsim {

// Base class of every error raised by the simulator library.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid or inconsistent configuration, detected before computation starts.
class ConfigError : public SimError {
public:
    using SimError::SimError;
};

// A numerical kernel failed (non-convergence, non-finite input, ...).
class NumericalError : public SimError {
public:
    using SimError::SimError;
};

// A beamformer could not be synthesized for the given channel realization
// (degenerate channel, colliding user geometries, infeasible dimensions).
class SynthesisError : public SimError {
public:
    using SimError::SimError;
};

// A metric could not be evaluated (e.g. singular disturbance covariance).
class MetricsError : public SimError {
public:
    using SimError::SimError;
};

}  // namespace mmwsim
