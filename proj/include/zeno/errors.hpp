#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zeno {

// Configuration could not be read: bad syntax, unknown key, unparsable value.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// A parameter violates one of its invariants. `field()` names the config key.
class ValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
    const std::string& field() const noexcept { return key(); }
};

// Base for failures of the numerical solvers (mapped to CLI exit code 2).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lossless, on-resonance loop with unit round-trip gain.
class SingularResonanceError : public SolverError {
public:
    using SolverError::SolverError;
};

// Fixed-point iteration exhausted its budget. Carries the last iterates.
class DivergenceError : public SolverError {
public:
    DivergenceError(const std::string& what, std::vector<std::pair<double, double>> tail)
        : SolverError(what), tail_(std::move(tail)) {}
    const std::vector<std::pair<double, double>>& trajectory_tail() const noexcept { return tail_; }

private:
    std::vector<std::pair<double, double>> tail_;
};

class NoSymmetricSolutionError : public SolverError {
public:
    using SolverError::SolverError;
};

// Photon energy exactly on the intermediate level: the perturbative rate diverges.
class VirtualResonanceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Closed-form coupling relations are only valid for small round-trip loss.
class OutsideApproximationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class OutOfRangeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class EmptyRunError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotSwitchedError : public SolverError {
public:
    using SolverError::SolverError;
};

class IndeterminateStateError : public SolverError {
public:
    using SolverError::SolverError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace zeno
