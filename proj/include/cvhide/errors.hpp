#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace cvhide {

// Thrown when an operation receives a parameter outside its documented range.
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a numeric routine cannot reach its accuracy target
// (quadrature failure, non-finite entries, residuals above threshold).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by the resource planners when the requested target is unreachable;
// the message carries the limiting value.
class infeasible_budget : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a verified mathematical inequality is violated beyond tolerance.
class assertion_failure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class Warning {
    truncation_unreliable,
    grid_too_small,
};

using WarningHandler = std::function<void(Warning, const std::string&)>;

// Replaces the process-wide warning sink (default writes to stderr).
// Returns the previous handler. Intended to be set once at startup.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(Warning kind, const std::string& message);

} // namespace cvhide
