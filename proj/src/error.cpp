#include "sidonkit/error.hpp"

namespace sidonkit {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::NotOddPrime: return "NotOddPrime";
        case ErrorKind::NotGenerator: return "NotGenerator";
        case ErrorKind::RangeError: return "RangeError";
        case ErrorKind::PrimeNotFound: return "PrimeNotFound";
        case ErrorKind::EngineUnavailable: return "EngineUnavailable";
        case ErrorKind::NoRepresentation: return "NoRepresentation";
        case ErrorKind::NonConvergent: return "NonConvergent";
        case ErrorKind::UnsupportedKind: return "UnsupportedKind";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::Overflow: return "Overflow";
    }
    return "Unknown";
}

}  // namespace sidonkit
