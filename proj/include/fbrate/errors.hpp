#pragma once

#include <stdexcept>
#include <string>

namespace fbrate {

/// A channel or request field is outside its admissible range.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// The partial-fraction / Tricomi-U route needs integer m and even integer mu.
class ClosedFormUnavailable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical engine stopped before reaching its tolerance.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate_(estimate), error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

}  // namespace fbrate
