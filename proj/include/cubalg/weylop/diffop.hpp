#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubalg/exactnum/fraction.hpp"

namespace cubalg {

/// Symbol table for operator coefficients: x, y, h (for hbar), a and the imaginary unit i.
/// Denominators may contain a, (x-a) and (x+a) only.
TablePtr weyl_table();

/// Differential operator sum c_{j,k}(x,y) d_x^j d_y^k with all derivatives to the right.
class DiffOp {
public:
    using Key = std::pair<int, int>;  // (order in d_x, order in d_y)

    explicit DiffOp(TablePtr table = weyl_table());
    static DiffOp multiplication(const Fraction& f);
    static DiffOp identity(TablePtr table) { return multiplication(Fraction(table, 1)); }
    static DiffOp dx(TablePtr table, int order = 1);
    static DiffOp dy(TablePtr table, int order = 1);

    const TablePtr& table() const { return table_; }
    const std::map<Key, Fraction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const;
    Fraction coefficient(Key k) const;

    void add_term(Key k, const Fraction& c);
    DiffOp operator-() const;
    DiffOp& operator+=(const DiffOp& rhs);
    DiffOp& operator-=(const DiffOp& rhs);
    friend DiffOp operator+(DiffOp l, const DiffOp& r) { return l += r; }
    friend DiffOp operator-(DiffOp l, const DiffOp& r) { return l -= r; }
    /// Left multiplication by a function or constant.
    DiffOp scaled(const Fraction& c) const;
    DiffOp pow(int n) const;

    bool operator==(const DiffOp& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const DiffOp& rhs) const { return !(*this == rhs); }

    /// Action on a coefficient-space function.
    Fraction apply(const Fraction& f) const;
    std::string to_string() const;

private:
    TablePtr table_;
    std::map<Key, Fraction> terms_;
};

/// Leibniz normal ordering, parallel over the left operand's terms.
DiffOp compose(const DiffOp& left, const DiffOp& right);
/// Single-threaded reference implementation of compose.
DiffOp compose_serial(const DiffOp& left, const DiffOp& right);
inline DiffOp operator*(const DiffOp& l, const DiffOp& r) { return compose(l, r); }

DiffOp commutator(const DiffOp& a, const DiffOp& b);
DiffOp anticommutator(const DiffOp& a, const DiffOp& b);

/// Mixed partial derivative d_x^j d_y^k of a coefficient.
Fraction partial(const Fraction& f, int j, int k);

}  // namespace cubalg
