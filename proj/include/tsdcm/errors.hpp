#pragma once

#include <stdexcept>
#include <string>

namespace tsdcm {

/// Raised when a configuration value violates its domain. `field()` is the
/// dotted path of the offending value, e.g. "trigger.alpha".
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace tsdcm
