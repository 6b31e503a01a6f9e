#pragma once

#include <stdexcept>
#include <string>

namespace pulseion {

// Hard contract violations throw; recoverable conditions (unconverged sums,
// exhausted precision, wall-touching oracle runs) travel as result flags.

struct ZeroArgument : std::domain_error {
    explicit ZeroArgument(const std::string& what) : std::domain_error(what) {}
};

struct SingularCoefficient : std::domain_error {
    explicit SingularCoefficient(const std::string& what) : std::domain_error(what) {}
};

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

struct DepthTooLarge : std::invalid_argument {
    explicit DepthTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct ThresholdHit : std::domain_error {
    explicit ThresholdHit(const std::string& what) : std::domain_error(what) {}
};

struct TimeNotStored : std::out_of_range {
    explicit TimeNotStored(const std::string& what) : std::out_of_range(what) {}
};

struct SignalBelowNoise : std::runtime_error {
    explicit SignalBelowNoise(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateInput : std::invalid_argument {
    explicit DegenerateInput(const std::string& what) : std::invalid_argument(what) {}
};

struct StepRejected : std::runtime_error {
    explicit StepRejected(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pulseion
