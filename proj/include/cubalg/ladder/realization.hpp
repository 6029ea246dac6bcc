#pragma once

#include <array>
#include <optional>

#include "cubalg/algebra/spec.hpp"
#include "cubalg/ladder/ladder_expr.hpp"

namespace cubalg {

/// Structure constants expressed over a ladder context table.
struct LadderConstants {
    Fraction alpha, beta, gamma, delta, epsilon, mu, nu, xi, zeta;
    std::optional<Fraction> sqrt_delta;  // required in Case 2
};

/// Deformed-oscillator realization A = A(N), B = b(N) + b^t rho(N) + b, with
/// every function written in n = N + u.
struct OscRealization {
    LadderContext ctx;
    int case_id = 0;
    Fraction A, b, rho;

    LadderExpr A_op() const;
    LadderExpr B_op() const;
    LadderExpr C_op() const { return commutator(A_op(), B_op()); }
};

/// Context used for concrete specs: n, Phi symbols, E, h, a.
const LadderContext& spec_context();

LadderConstants constants_from_spec(const CubicAlgebraSpec& spec, const LadderContext& ctx);

/// Solves the matching equations for A(N) and b(N). Throws UnsupportedCase when beta = delta = 0,
/// and InvalidArgument when Case 2 needs sqrt(delta) and delta is not a perfect square.
OscRealization realize(const LadderContext& ctx, const LadderConstants& c, const Fraction& rho);
OscRealization derive_realization(const CubicAlgebraSpec& spec);
OscRealization derive_realization(const CubicAlgebraSpec& spec, const Fraction& rho);

/// Normalization of rho: Case 1 uses 1/(3*2^12 beta^8 n(n+1)(2n+1)^2), Case 2 uses 1.
Fraction choose_rho(int case_id, const LadderContext& ctx, const Fraction& beta);

/// Residuals of Delta A^2 - beta(A(N+1)+A(N)) - delta and (2 beta A + delta) b + alpha A^2 + gamma A + epsilon.
std::array<Fraction, 2> realization_residuals(const OscRealization& r, const LadderConstants& c);

/// [B,C] minus its prescribed right-hand side, in the realization.
LadderExpr bc_residual(const OscRealization& r, const LadderConstants& c);

/// K on the basis {C^2, {A^2,B}, {A,B^2}, {A,B}, B^2, B, A^4, A^3, A^2, A, 1} in the realization.
LadderExpr casimir_in_realization(const OscRealization& r, const std::vector<Fraction>& coef);

/// Splits f = sum_i coeffs[i]*s_i + constant for the listed symbols; throws if f is not affine in them.
std::vector<Fraction> affine_parts(const Fraction& f, const std::vector<int>& syms);

}  // namespace cubalg
