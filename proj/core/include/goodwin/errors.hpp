#pragma once

#include <stdexcept>
#include <string>

namespace goodwin {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside a function's domain (e.g. negative concentration).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested value outside a map's range. Carries the range so callers can
/// report exactly which bound was exceeded.
class RangeError : public Error {
public:
    RangeError(const std::string& what, double lo, double hi, double requested)
        : Error(what), lo(lo), hi(hi), requested(requested) {}
    double lo;
    double hi;
    double requested;
};

/// Invalid configuration: bad parameter, unknown field, missing preset.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A certificate computation cannot proceed (bad preconditions).
class AnalysisError : public Error {
public:
    using Error::Error;
};

/// A secant gain past the leading block is infinite, so the chain gain
/// (and the synchronization criterion) is undefined.
class InfiniteGainError : public AnalysisError {
public:
    InfiniteGainError(const std::string& what, int block_index)
        : AnalysisError(what), block_index(block_index) {}
    int block_index;  // 1-based
};

/// The ultimate-bound recursion hit an inverse that is not defined at the
/// required value. Identifies the failing block.
class BoundUndefinedError : public AnalysisError {
public:
    BoundUndefinedError(const std::string& what, int block_index, double input_value,
                        double sup_rate)
        : AnalysisError(what),
          block_index(block_index),
          input_value(input_value),
          sup_rate(sup_rate) {}
    int block_index;     // 1-based
    double input_value;  // value the inverse was asked for
    double sup_rate;     // supremum of the rate map at that block
};

/// Base for runtime integration failures.
class SimulationError : public Error {
public:
    using Error::Error;
};

/// A state component went below -1e-9. Exact solutions stay positive, so this
/// indicates discretization error; the step size should be reduced.
class PositivityViolationError : public SimulationError {
public:
    PositivityViolationError(const std::string& what, double time, int oscillator,
                             int state_index, double value)
        : SimulationError(what),
          time(time),
          oscillator(oscillator),
          state_index(state_index),
          value(value) {}
    double time;
    int oscillator;   // 0-based
    int state_index;  // 0-based
    double value;
};

/// A state became non-finite.
class DivergenceError : public SimulationError {
public:
    DivergenceError(const std::string& what, double time) : SimulationError(what), time(time) {}
    double time;
};

/// Fewer than three peaks found; no period can be estimated.
class NotOscillatingError : public Error {
public:
    NotOscillatingError(const std::string& what, int peaks_found)
        : Error(what), peaks_found(peaks_found) {}
    int peaks_found;
};

}  // namespace goodwin
