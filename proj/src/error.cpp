#include "ctorus/error.hpp"

namespace ctorus {

std::string_view error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::NotSquareRootOfD: return "NotSquareRootOfD";
    case ErrorKind::NotAnEndomorphism: return "NotAnEndomorphism";
    case ErrorKind::PerfectSquare: return "PerfectSquare";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::UnrecognizedStructure: return "UnrecognizedStructure";
    case ErrorKind::NotPolarization: return "NotPolarization";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::NoSuchElement: return "NoSuchElement";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::BoundTooLarge: return "BoundTooLarge";
    case ErrorKind::ScalarD: return "ScalarD";
    case ErrorKind::NotInND: return "NotInND";
    case ErrorKind::NotABasis: return "NotABasis";
    case ErrorKind::NotRational: return "NotRational";
    case ErrorKind::NotInEndo: return "NotInEndo";
    case ErrorKind::IndependenceSuspect: return "IndependenceSuspect";
    case ErrorKind::SquareProduct: return "SquareProduct";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::InvalidField:
    case ErrorKind::DegenerateLattice:
    case ErrorKind::NotSquareRootOfD:
    case ErrorKind::NotAnEndomorphism:
    case ErrorKind::PerfectSquare:
    case ErrorKind::NotReal:
    case ErrorKind::IndependenceSuspect:
    case ErrorKind::SquareProduct:
    case ErrorKind::ScalarD:
    case ErrorKind::NotPolarization:
    case ErrorKind::DimensionMismatch:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

} // namespace ctorus
