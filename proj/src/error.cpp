#include "cubalg/error.hpp"

namespace cubalg {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MismatchedSymbols: return "mismatched symbol tables";
        case ErrorKind::DivisionByZero: return "division by zero";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::DegreeBoundExceeded: return "degree bound exceeded";
        case ErrorKind::Syntax: return "syntax error";
        case ErrorKind::UnknownSymbol: return "unknown symbol";
        case ErrorKind::DisallowedDenominator: return "denominator outside declared atom set";
        case ErrorKind::NotInSpan: return "not in span";
        case ErrorKind::Ambiguous: return "ambiguous";
        case ErrorKind::JacobiViolation: return "Jacobi violation";
        case ErrorKind::Underdetermined: return "underdetermined";
        case ErrorKind::UnsupportedCase: return "unsupported case";
        case ErrorKind::SingularSystem: return "singular system";
        case ErrorKind::NonPolynomialPhi: return "non-polynomial structure function";
        case ErrorKind::ShiftInconsistency: return "shift inconsistency";
        case ErrorKind::ShiftBoundExceeded: return "shift bound exceeded";
        case ErrorKind::RealizationMismatch: return "realization mismatch";
        case ErrorKind::NegativeStructureFunction: return "negative structure function";
        case ErrorKind::NotTruncated: return "representation not truncated";
        case ErrorKind::RelationFailure: return "relation failure";
        case ErrorKind::SingularPotential: return "singular potential";
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::Io: return "i/o error";
    }
    return "unknown";
}

}  // namespace cubalg
