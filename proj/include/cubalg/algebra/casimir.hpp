#pragma once

#include <array>

#include "cubalg/algebra/spec.hpp"
#include "cubalg/ladder/ladder_expr.hpp"
#include "cubalg/weylop/q5.hpp"

namespace cubalg {

/// Casimir coefficients c1..c9 as polynomials in symbolic structure constants,
/// derived once per realization case from [K,A] = [K,B] = 0.
struct GenericCasimir {
    int case_id = 0;
    LadderContext ctx;
    /// Indices in ctx.table of al, be, ga, de, ep, mu, nu, xi, ze.
    std::array<int, 9> constant_symbols{};
    /// Coefficients of {A^2,B}, {A,B^2}, {A,B}, B^2, B, A^4, A^3, A^2, A.
    std::vector<MultiPoly> c;
};

/// Derives (and caches) the generic coefficients. Case 2 sets beta = 0 and
/// eliminates sqrt(delta). Throws Underdetermined if the linear system has a free column.
const GenericCasimir& generic_casimir(int case_id);

/// Substitutes the spec's constants into the generic coefficients.
CasimirExpression specialize(const GenericCasimir& g, const CubicAlgebraSpec& spec);

/// Builds K as a differential operator, with every power of E replaced by H.
/// Coefficients must be polynomial in E.
DiffOp casimir_operator(const CasimirExpression& k, const Q5Operators& q);

/// Same replacement for a scalar depending on E (e.g. the Casimir value k(E)).
DiffOp energy_operator(const Fraction& f, const DiffOp& H);

}  // namespace cubalg
