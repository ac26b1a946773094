// errors.hpp — Exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace drf {

// Base for all numerical failures (maps to CLI exit code 3).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive quadrature ran out of subdivisions above tolerance.
class NonConvergence : public NumericError {
public:
    explicit NonConvergence(const std::string& msg) : NumericError(msg) {}
};

// Integrand returned inf or nan.
class NonFinite : public NumericError {
public:
    explicit NonFinite(const std::string& msg) : NumericError(msg) {}
};

// Semi-infinite integrand still significant at the truncation point.
class TailNotDecayed : public NumericError {
public:
    explicit TailNotDecayed(const std::string& msg) : NumericError(msg) {}
};

// Correlation-table lookup outside the sampled range.
class TableRange : public NumericError {
public:
    explicit TableRange(const std::string& msg) : NumericError(msg) {}
};

// Peak extraction did not find the expected cluster structure.
class PeakCountMismatch : public NumericError {
public:
    explicit PeakCountMismatch(const std::string& msg) : NumericError(msg) {}
};

// Bad configuration (maps to CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace drf
