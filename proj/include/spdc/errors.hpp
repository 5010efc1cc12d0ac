#ifndef SPDC_ERRORS_HPP
#define SPDC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spdc {

// Base class for every structured failure of the toolbox.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- configuration / file-format errors (CLI exit code 2) ---

class ConfigError : public Error {
public:
    using Error::Error;
};

class ConfigSyntaxError : public ConfigError {
public:
    ConfigSyntaxError(int line, int column, const std::string& msg)
        : ConfigError("syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    int line;
    int column;
};

class ConfigSemanticError : public ConfigError {
public:
    ConfigSemanticError(const std::string& key, const std::string& msg)
        : ConfigError("invalid configuration: key '" + key + "': " + msg), key(key) {}
    std::string key;
};

// --- numerical-contract violations (CLI exit code 3) ---

class NumericError : public Error {
public:
    using Error::Error;
};

class AngleOutOfRange : public NumericError {
public:
    using NumericError::NumericError;
};

class GridTooCoarse : public NumericError {
public:
    using NumericError::NumericError;
};

class DomainMismatch : public NumericError {
public:
    using NumericError::NumericError;
};

class WaistMismatch : public NumericError {
public:
    using NumericError::NumericError;
};

class ImaginaryResidueTooLarge : public NumericError {
public:
    using NumericError::NumericError;
};

class SupportExceeded : public NumericError {
public:
    using NumericError::NumericError;
};

class ShiftExceedsGrid : public NumericError {
public:
    using NumericError::NumericError;
};

class PointOffGrid : public NumericError {
public:
    using NumericError::NumericError;
};

class NoPeaks : public NumericError {
public:
    using NumericError::NumericError;
};

class BeamLeavesDevice : public NumericError {
public:
    using NumericError::NumericError;
};

class RejectedValue : public NumericError {
public:
    using NumericError::NumericError;
};

// --- I/O errors (CLI exit code 4) ---

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace spdc

#endif
