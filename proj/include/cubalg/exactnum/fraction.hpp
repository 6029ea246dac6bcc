#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubalg/exactnum/multipoly.hpp"

namespace cubalg {

/// One irreducible denominator factor raised to a positive power. The atom is
/// linear in its lowest-index symbol with coefficient one, e.g. a, x-a, n+1/2.
struct DenFactor {
    MultiPoly atom;
    int power;
};

/// Exact fraction num / prod(atom^power). Denominator atoms are restricted by
/// the symbol table's DenominatorPolicy. Canonical form: every atom power that
/// divides the numerator is cancelled, atoms are sorted and distinct.
class Fraction {
public:
    explicit Fraction(TablePtr table);
    Fraction(TablePtr table, const Rational& c);
    Fraction(const MultiPoly& num);  // NOLINT(google-explicit-constructor): polynomials are fractions
    /// Builds num / prod(factor^power); factors may be any allowed linear polynomials (not yet normalized).
    static Fraction from_parts(const MultiPoly& num, const std::vector<std::pair<MultiPoly, int>>& factors);
    static Fraction symbol(TablePtr table, const std::string& name, int power = 1);

    const TablePtr& table() const { return num_.table(); }
    const MultiPoly& num() const { return num_; }
    const std::vector<DenFactor>& den() const { return den_; }
    MultiPoly den_poly() const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    Rational constant_value() const;  // throws unless is_constant()
    /// The numerator when the denominator is trivial; throws otherwise.
    const MultiPoly& as_poly() const;

    Fraction operator-() const;
    Fraction& operator+=(const Fraction& rhs);
    Fraction& operator-=(const Fraction& rhs);
    Fraction& operator*=(const Fraction& rhs);
    Fraction& operator/=(const Fraction& rhs);
    friend Fraction operator+(Fraction l, const Fraction& r) { return l += r; }
    friend Fraction operator-(Fraction l, const Fraction& r) { return l -= r; }
    friend Fraction operator*(Fraction l, const Fraction& r) { return l *= r; }
    friend Fraction operator/(Fraction l, const Fraction& r) { return l /= r; }
    Fraction scaled(const Rational& c) const;
    Fraction pow(int n) const;
    Fraction inverse() const;

    bool operator==(const Fraction& rhs) const;
    bool operator!=(const Fraction& rhs) const { return !(*this == rhs); }

    Fraction derivative(int sym) const;
    Fraction substitute(int sym, const Fraction& value) const;
    Fraction shift(int sym, const Rational& delta) const;
    Fraction evaluate_partial(const std::map<int, Rational>& values) const;
    /// Throws Error(Pole) naming the vanishing atom.
    Rational evaluate(const std::map<int, Rational>& values) const;
    Rational evaluate(const std::map<std::string, Rational>& values) const;

    int degree(int sym) const;  // numerator degree minus denominator degree
    bool depends_on(int sym) const;
    Fraction rebase(TablePtr other) const;
    std::string to_string() const;

private:
    void canonicalize();
    MultiPoly num_;
    std::vector<DenFactor> den_;
};

/// Factors a nonzero polynomial into c * prod(atom^k) when every factor is an
/// allowed atom; throws Error(DisallowedDenominator) otherwise.
std::pair<Rational, std::vector<DenFactor>> factor_into_atoms(const MultiPoly& p);

/// Square root with positive leading coefficient when p is a perfect square.
std::optional<MultiPoly> sqrt_exact(const MultiPoly& p);
/// Square root of a fraction whose numerator is a square and whose denominator powers are even.
std::optional<Fraction> sqrt_exact(const Fraction& f);

/// Evaluates p with fractions substituted for its symbols; the result lives in the values' table.
Fraction compose_poly(const MultiPoly& p, const std::map<int, Fraction>& values, const TablePtr& target);
Fraction compose_fraction(const Fraction& f, const std::map<int, Fraction>& values, const TablePtr& target);

}  // namespace cubalg
