#pragma once

#include <stdexcept>
#include <string>

namespace cubalg {

enum class ErrorKind {
    MismatchedSymbols,
    DivisionByZero,
    Pole,
    DegreeBoundExceeded,
    Syntax,
    UnknownSymbol,
    DisallowedDenominator,
    NotInSpan,
    Ambiguous,
    JacobiViolation,
    Underdetermined,
    UnsupportedCase,
    SingularSystem,
    NonPolynomialPhi,
    ShiftInconsistency,
    ShiftBoundExceeded,
    RealizationMismatch,
    NegativeStructureFunction,
    NotTruncated,
    RelationFailure,
    SingularPotential,
    InvalidArgument,
    Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind and the module that raised it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

}  // namespace cubalg
