#pragma once

#include <array>
#include <optional>
#include <string>

#include "cubalg/exactnum/fraction.hpp"

namespace cubalg {

/// Table for structure constants: E (energy), h (hbar), a. Bare symbols may divide.
TablePtr algebra_table();

/// Structure constants of
///   [A,B] = C,
///   [A,C] = alpha A^2 + beta {A,B} + gamma A + delta B + epsilon,
///   [B,C] = mu A^3 + nu A^2 - beta B^2 - alpha {A,B} + xi A - gamma B + zeta,
/// and the Casimir value k, all as fractions in E, h, a.
struct CubicAlgebraSpec {
    Fraction alpha, beta, gamma, delta, epsilon, mu, nu, xi, zeta, k;

    CubicAlgebraSpec();
    static constexpr std::array<const char*, 10> kNames{"alpha", "beta", "gamma", "delta", "epsilon",
                                                        "mu",    "nu",   "xi",    "zeta",  "k"};
    Fraction& operator[](std::size_t i);
    const Fraction& operator[](std::size_t i) const;
    bool operator==(const CubicAlgebraSpec& rhs) const;
    /// 1 when beta != 0, 2 when beta == 0 and delta != 0, 0 otherwise.
    int realization_case() const;
};

/// Constants as they appear before the Jacobi identity is imposed: the [B,C]
/// relation carries free rho B^2 + sigma {A,B} + eta B.
struct RawAlgebraConstants {
    CubicAlgebraSpec base;
    Fraction rho, sigma, eta;
    RawAlgebraConstants();
};

/// Enforces rho = -beta, sigma = -alpha, eta = -gamma; throws JacobiViolation otherwise.
CubicAlgebraSpec jacobi_reduce(const RawAlgebraConstants& raw);

/// The Q5 instance with H replaced by its eigenvalue E.
CubicAlgebraSpec q5_spec();

/// Coefficients of K on the ordered basis
/// {C^2, {A^2,B}, {A,B^2}, {A,B}, B^2, B, A^4, A^3, A^2, A, 1}.
struct CasimirExpression {
    std::vector<Fraction> coef;
    static constexpr std::array<const char*, 11> kBasis{"C^2", "{A^2,B}", "{A,B^2}", "{A,B}", "B^2", "B",
                                                        "A^4", "A^3",     "A^2",     "A",     "1"};
    CasimirExpression();
    bool operator==(const CasimirExpression& rhs) const { return coef == rhs.coef; }
};

/// Casimir coefficients obtained by requiring [K,A] = [K,B] = 0 in the
/// deformed-oscillator realization (see casimir.hpp), specialised to spec.
CasimirExpression casimir_coefficients(const CubicAlgebraSpec& spec);

/// The commonly quoted closed form, kept as an independent cross-check.
CasimirExpression closed_form_casimir(const CubicAlgebraSpec& spec);

}  // namespace cubalg
