#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubalg/exactnum/rational.hpp"
#include "cubalg/exactnum/symbols.hpp"

namespace cubalg {

struct Term {
    Exponents exp{};
    Rational coef;
};

/// Sparse multivariate polynomial over the rationals. Terms are kept in
/// descending lexicographic order (symbol 0 most significant) with no zero
/// coefficients. The table's imaginary symbol, if any, is reduced eagerly
/// so its exponent never exceeds one.
class MultiPoly {
public:
    explicit MultiPoly(TablePtr table);
    MultiPoly(TablePtr table, const Rational& constant);

    static MultiPoly symbol(TablePtr table, int index, unsigned power = 1);
    static MultiPoly symbol(TablePtr table, const std::string& name, unsigned power = 1);
    static MultiPoly monomial(TablePtr table, const Exponents& exp, const Rational& coef);

    const TablePtr& table() const { return table_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    Rational constant_term() const;
    const Term& leading() const { return terms_.front(); }

    int degree(int sym) const;
    int total_degree() const;
    bool depends_on(int sym) const { return degree(sym) > 0; }
    /// Symbols with a nonzero exponent somewhere.
    std::vector<int> support() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);
    MultiPoly& operator*=(const MultiPoly& rhs);
    friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
    friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
    friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);
    MultiPoly scaled(const Rational& c) const;
    MultiPoly times_monomial(const Exponents& exp, const Rational& coef) const;
    MultiPoly pow(unsigned n) const;

    bool operator==(const MultiPoly& rhs) const;
    bool operator!=(const MultiPoly& rhs) const { return !(*this == rhs); }
    /// Total order used to sort atoms: compares term lists.
    int compare(const MultiPoly& rhs) const;

    /// coefficients_in(s)[k] is the coefficient of s^k (free of s).
    std::vector<MultiPoly> coefficients_in(int sym) const;
    static MultiPoly from_coefficients(TablePtr table, int sym, const std::vector<MultiPoly>& coeffs);

    MultiPoly derivative(int sym) const;
    MultiPoly substitute(int sym, const MultiPoly& value) const;
    MultiPoly shift(int sym, const Rational& delta) const;
    /// Replaces symbol k by map[k] (another index of the same table) for all symbols.
    MultiPoly permute(const std::vector<int>& map) const;
    /// Substitutes rational values for the given symbols.
    MultiPoly evaluate_partial(const std::map<int, Rational>& values) const;
    /// Full evaluation; every symbol present must be assigned.
    Rational evaluate(const std::map<int, Rational>& values) const;

    /// Largest monomial dividing every term, and the gcd-free rational scale is left alone.
    Exponents content_monomial() const;

    std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;
    /// Division by (sym - c) where c does not involve sym; nullopt when inexact.
    std::optional<MultiPoly> divide_linear(int sym, const MultiPoly& c) const;

    /// The same polynomial expressed over another table, matching symbols by name.
    MultiPoly rebase(TablePtr other) const;

    std::string to_string() const;

private:
    void check_table(const MultiPoly& other) const;
    void normalize();  // sort, merge, drop zeros

    TablePtr table_;
    std::vector<Term> terms_;
};

std::string monomial_string(const SymbolTable& table, const Exponents& exp);

}  // namespace cubalg
