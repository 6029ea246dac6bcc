#pragma once

#include <optional>

#include "cubalg/algebra/spec.hpp"
#include "cubalg/ladder/realization.hpp"

namespace cubalg {

/// Table for structure functions: x (the oscillator number N), u, E, h, a, p.
TablePtr phi_table();

struct StructureFunction {
    OscRealization realization;
    Fraction phi_n;  // Phi as a function of n = N + u, over spec_context()
    Fraction phi;    // Phi(x; u, E) over phi_table()
    int degree = 0;  // degree in x
};

/// Solves the [B,C] relation and K = k, both at offset zero, for Phi(N) and
/// Phi(N+1). Errors: SingularSystem, ShiftInconsistency (Phi(N+1) is not the
/// shift of Phi(N)), NonPolynomialPhi, RealizationMismatch (off-diagonal residue).
StructureFunction derive_structure_function(const CubicAlgebraSpec& spec,
                                            const std::optional<CasimirExpression>& casimir = std::nullopt,
                                            const std::optional<Fraction>& rho = std::nullopt);

/// Shift by x -> x + d of a structure function over phi_table().
Fraction phi_at(const Fraction& phi, const Rational& x);

}  // namespace cubalg
