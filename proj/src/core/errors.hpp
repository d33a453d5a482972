#pragma once

#include <stdexcept>
#include <string>

namespace stylesearch {

// Invalid configuration or data rejected before any work starts.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Mismatched vector/matrix dimensions between pipeline stages.
class DimensionError : public ValidationError {
public:
    explicit DimensionError(const std::string& msg) : ValidationError(msg) {}
};

// File I/O failure; message carries the offending path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace stylesearch
