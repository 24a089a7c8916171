#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chargenet {

/// Malformed input record. Carries the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input parsed but violates a model invariant (negative population, duplicate id, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Booking overlaps an existing one at the same charge point.
class ConflictError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Scenario configuration rejected before any sampling took place.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A data source (population raster, charge-point file) could not be read.
class DataSourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chargenet
