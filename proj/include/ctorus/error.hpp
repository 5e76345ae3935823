#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctorus {

enum class ErrorKind {
    DivisionByZero,
    NotInvertible,
    PrecisionExhausted,
    NotReal,
    InvalidField,
    DegenerateLattice,
    NotSquareRootOfD,
    NotAnEndomorphism,
    PerfectSquare,
    NotClosed,
    UnrecognizedStructure,
    NotPolarization,
    NotStable,
    NoSuchElement,
    NegativeDiscriminant,
    BoundTooLarge,
    ScalarD,
    NotInND,
    NotABasis,
    NotRational,
    NotInEndo,
    IndependenceSuspect,
    SquareProduct,
    GenerationFailed,
    ParseError,
    ValidationError,
    DimensionMismatch,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// True for errors caused by the input document rather than by the library.
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

} // namespace ctorus
