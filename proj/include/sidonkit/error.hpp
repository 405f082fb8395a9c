#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sidonkit {

enum class ErrorKind {
    NotPrime,
    NotOddPrime,
    NotGenerator,
    RangeError,
    PrimeNotFound,
    EngineUnavailable,
    NoRepresentation,
    NonConvergent,
    UnsupportedKind,
    InvalidArgument,
    ParseError,
    Overflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Domain failure raised by every module. The kind is what callers (and the
// CLI exit-code mapping) dispatch on; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace sidonkit
