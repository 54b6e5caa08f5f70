#pragma once

#include <stdexcept>
#include <string>

namespace wavemu {

/// Invalid configuration values (bad PHY parameters, zero scrambler seed,
/// out-of-range training knobs, malformed config files).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A buffer whose length does not match the framing it is used with.
class FramingError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Invalid subcarrier selection (duplicates, non-data bins).
class SelectionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Payload does not fit the packet or violates the emulation bound.
class CapacityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite values or divergence inside numerical code.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// I/O failures on model, frame and report files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wavemu
