#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elri {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input configuration: bad grid size, nonzero mean where the
/// schemes require zero mean, reserved scheme selected, etc.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A non-finite value appeared during time stepping.
class BlowUpError : public Error {
public:
    BlowUpError(std::size_t step, const std::string& what)
        : Error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Two independent reference solutions disagree beyond tolerance.
class ReferenceInvalidError : public Error {
public:
    using Error::Error;
};

/// O(N^3) oracle requested at a grid size above the guard.
class CostGuardError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace elri
