#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubalg/exactnum/fraction.hpp"

namespace cubalg {

/// Largest |j| for which the unknown value Phi(N+j) is tracked.
inline constexpr int kPhiShiftBound = 2;

/// Symbol layout for ladder computations: n stands for N+u, F_m2..F2 stand
/// for Phi(N-2)..Phi(N+2); further symbols hold parameters.
struct LadderContext {
    TablePtr table;
    int n = -1;
    int phi[2 * kPhiShiftBound + 1] = {};

    /// Table with n, F_m2..F2 followed by the extra names; denominators may be any linear atom.
    static LadderContext make(const std::vector<std::string>& extra);

    int phi_symbol(int shift) const;
    Fraction phi_value(int shift) const;  // Phi(N+shift) as an expression
    Fraction n_symbol() const;
};

/// f(N) -> f(N+d): shifts n and relabels Phi(N+j) as Phi(N+j+d). Throws ShiftBoundExceeded.
Fraction shift_n(const LadderContext& ctx, const Fraction& f, int d);

/// Element of the deformed oscillator algebra in normal order. Offset k > 0
/// stores (b^t)^k f(N), offset k < 0 stores f(N) b^|k|, offset 0 stores f(N).
class LadderExpr {
public:
    explicit LadderExpr(const LadderContext& ctx);
    static LadderExpr diagonal(const LadderContext& ctx, const Fraction& f);
    static LadderExpr raising(const LadderContext& ctx, const Fraction& f);   // b^t f(N)
    static LadderExpr lowering(const LadderContext& ctx, const Fraction& f);  // f(N) b

    const std::map<int, Fraction>& terms() const { return terms_; }
    Fraction coefficient(int offset) const;
    bool is_zero() const { return terms_.empty(); }
    const LadderContext& context() const { return ctx_; }

    void add_term(int offset, const Fraction& c);
    LadderExpr operator-() const;
    LadderExpr& operator+=(const LadderExpr& rhs);
    LadderExpr& operator-=(const LadderExpr& rhs);
    friend LadderExpr operator+(LadderExpr l, const LadderExpr& r) { return l += r; }
    friend LadderExpr operator-(LadderExpr l, const LadderExpr& r) { return l -= r; }
    friend LadderExpr operator*(const LadderExpr& l, const LadderExpr& r);
    LadderExpr scaled(const Fraction& c) const;  // multiplies every coefficient (c must be central)
    /// Applies a map to every coefficient.
    template <class Fn>
    LadderExpr map_coefficients(Fn&& fn) const {
        LadderExpr out(ctx_);
        for (const auto& [k, c] : terms_) out.add_term(k, fn(c));
        return out;
    }

    bool operator==(const LadderExpr& rhs) const { return terms_ == rhs.terms_; }
    std::string to_string() const;

private:
    LadderContext ctx_;
    std::map<int, Fraction> terms_;
};

LadderExpr commutator(const LadderExpr& a, const LadderExpr& b);
LadderExpr anticommutator(const LadderExpr& a, const LadderExpr& b);

}  // namespace cubalg
