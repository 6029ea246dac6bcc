#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cubalg/algebra/spec.hpp"
#include "cubalg/ladder/structure.hpp"
#include "cubalg/repcheck/matrix.hpp"

namespace cubalg {

enum class Gauge { TriangularExact, SymmetricFloat };
const char* to_string(Gauge g);

/// Values of the realization on the states N = 0..p at fixed E, u, h, a.
struct FockData {
    int p = 0;
    std::vector<Rational> A, b, rho;  // at n = N + u, N = 0..p
    std::vector<Rational> phi;        // Phi(N) for N = 0..p+1
};

FockData fock_data(const StructureFunction& sf, const Rational& E, const Rational& u, const Rational& h,
                   const Rational& a, int p);

template <class T>
struct FockMatrices {
    int p = 0;
    Gauge gauge = Gauge::TriangularExact;
    Matrix<T> N, b, b_dagger, A, B, C;
};

/// b lowers with weight 1, b^t raises with weight Phi(N+1); fully rational.
/// Throws NotTruncated when Phi(p+1) != 0 and Pole/InvalidArgument on bad data.
FockMatrices<Rational> triangular_gauge(const FockData& d);
/// Diagonal similarity of the triangular gauge making B symmetric, in extended precision;
/// needs rho*Phi > 0 on every link (NegativeStructureFunction otherwise).
FockMatrices<long double> symmetric_gauge(const FockData& d);

/// Constants and Casimir value evaluated at a point.
struct NumericConstants {
    Rational alpha, beta, gamma, delta, epsilon, mu, nu, xi, zeta, k;
    std::vector<Rational> casimir;  // 11 coefficients
};
NumericConstants evaluate_constants(const CubicAlgebraSpec& spec, const CasimirExpression& casimir, const Rational& E,
                                    const Rational& h, const Rational& a);

struct Residual {
    std::string relation;
    Gauge gauge;
    double max_residual = 0;
    double relative_residual = 0;  // max_residual over the largest summand (at least 1)
    bool exact_zero = false;  // meaningful in the exact gauge
};

std::vector<Residual> verify_relations(const FockMatrices<Rational>& m, const NumericConstants& c);
std::vector<Residual> verify_relations(const FockMatrices<long double>& m, const NumericConstants& c);
/// Throws Error(RelationFailure) naming the first relation with a nonzero exact residual.
void require_exact(const std::vector<Residual>& report);

/// Random Case 1 algebra with small rational constants; zeta and k are solved so that
/// Phi(0) = 0 and Phi(p+1) = 0 at the returned shift u.
struct RandomCase1 {
    CubicAlgebraSpec spec;
    Rational u;
    int p = 0;
    StructureFunction structure;
};
RandomCase1 random_case1(std::mt19937_64& rng, int p);

}  // namespace cubalg
