#ifndef QWAVE_ERRORS_HPP
#define QWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qwave {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid model ingredients or malformed inputs (non-monotone tables,
// eta(0) != 1, empty particle lists, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Grid window does not cover enough probability mass.
class WindowTooSmall : public Error {
public:
    using Error::Error;
};

// Explicit time stepping produced a monotonicity repair beyond tolerance.
class SchemeUnstable : public Error {
public:
    using Error::Error;
};

// Experiment config problems: unknown keys, missing fields, bad values.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Checkpoint file problems: bad magic, version mismatch, checksum failure.
class CheckpointError : public Error {
public:
    using Error::Error;
};

} // namespace qwave

#endif
