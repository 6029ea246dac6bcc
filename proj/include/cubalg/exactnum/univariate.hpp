#pragma once

#include <utility>
#include <vector>

#include "cubalg/exactnum/multipoly.hpp"
#include "cubalg/exactnum/rational.hpp"

namespace cubalg {

/// Dense univariate polynomial with rational coefficients, lowest degree first.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    static UniPoly constant(const Rational& c) { return UniPoly({c}); }
    static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }

    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const;
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly scaled(const Rational& c) const;
    bool operator==(const UniPoly& rhs) const { return c_ == rhs.c_; }

    UniPoly derivative() const;
    UniPoly monic() const;
    /// Integer coefficients with gcd one and positive leading coefficient.
    UniPoly primitive() const;
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

    static UniPoly from_multipoly(const MultiPoly& p, int sym);
    MultiPoly to_multipoly(TablePtr table, int sym) const;

private:
    void trim();
    std::vector<Rational> c_;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Yun's algorithm: returns (factor, multiplicity) pairs with square-free, pairwise coprime factors.
std::vector<std::pair<UniPoly, int>> square_free_decomposition(const UniPoly& p);

std::vector<UniPoly> sturm_sequence(const UniPoly& p);
int sign_variations(const std::vector<UniPoly>& seq, const Rational& x);
/// Distinct real roots in (lo, hi].
int count_roots(const std::vector<UniPoly>& seq, const Rational& lo, const Rational& hi);

struct RootInterval {
    Rational lo;
    Rational hi;
    int multiplicity = 1;

    Rational midpoint() const { return (lo + hi) / 2; }
    bool exact() const { return lo == hi; }
};

/// Default refinement width, 1e-9.
Rational default_root_width();

/// Cauchy bound: every real root lies in [-B, B].
Rational root_bound(const UniPoly& p);

/// Isolates every real root in the closed interval [lo, hi] and refines it to the given width.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& lo, const Rational& hi,
                                             const Rational& width = default_root_width());
std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& width = default_root_width());

/// Exact rational roots with multiplicity, sorted ascending.
std::vector<std::pair<Rational, int>> rational_roots(const UniPoly& p);

/// Polynomial of degree <= bound through the points; throws DegreeBoundExceeded if extra points disagree.
UniPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree_bound);

}  // namespace cubalg
