#include "cubalg/ladder/ladder_expr.hpp"

#include "cubalg/error.hpp"

namespace cubalg {

namespace {

const char* kPhiNames[] = {"F_m2", "F_m1", "F0", "F1", "F2"};

}  // namespace

LadderContext LadderContext::make(const std::vector<std::string>& extra) {
    std::vector<std::string> names{"n"};
    for (const char* f : kPhiNames) names.emplace_back(f);
    names.insert(names.end(), extra.begin(), extra.end());
    LadderContext ctx;
    ctx.table = SymbolTable::make(names, DenominatorPolicy{.any_linear = true});
    ctx.n = 0;
    for (int j = 0; j <= 2 * kPhiShiftBound; ++j) ctx.phi[j] = 1 + j;
    return ctx;
}

int LadderContext::phi_symbol(int shift) const {
    if (shift < -kPhiShiftBound || shift > kPhiShiftBound)
        throw Error(ErrorKind::ShiftBoundExceeded, "ladder",
                    "Phi(N" + std::string(shift < 0 ? "" : "+") + std::to_string(shift) + ") is outside the tracked range");
    return phi[shift + kPhiShiftBound];
}

Fraction LadderContext::phi_value(int shift) const { return Fraction(MultiPoly::symbol(table, phi_symbol(shift))); }

Fraction LadderContext::n_symbol() const { return Fraction(MultiPoly::symbol(table, n)); }

Fraction shift_n(const LadderContext& ctx, const Fraction& f, int d) {
    if (d == 0) return f;
    std::vector<int> map(ctx.table->size());
    for (std::size_t k = 0; k < map.size(); ++k) map[k] = static_cast<int>(k);
    bool uses_phi = false;
    for (int j = -kPhiShiftBound; j <= kPhiShiftBound; ++j) {
        int sym = ctx.phi[j + kPhiShiftBound];
        if (!f.num().depends_on(sym)) continue;
        uses_phi = true;
        map[static_cast<std::size_t>(sym)] = ctx.phi_symbol(j + d);
    }
    Fraction out = f;
    if (uses_phi) {
        std::vector<std::pair<MultiPoly, int>> parts;
        for (const auto& df : f.den()) parts.emplace_back(df.atom, df.power);
        out = Fraction::from_parts(f.num().permute(map), parts);
    }
    return out.shift(ctx.n, Rational(d));
}

LadderExpr::LadderExpr(const LadderContext& ctx) : ctx_(ctx) {}

LadderExpr LadderExpr::diagonal(const LadderContext& ctx, const Fraction& f) {
    LadderExpr e(ctx);
    e.add_term(0, f);
    return e;
}

LadderExpr LadderExpr::raising(const LadderContext& ctx, const Fraction& f) {
    LadderExpr e(ctx);
    e.add_term(1, f);
    return e;
}

LadderExpr LadderExpr::lowering(const LadderContext& ctx, const Fraction& f) {
    LadderExpr e(ctx);
    e.add_term(-1, f);
    return e;
}

Fraction LadderExpr::coefficient(int offset) const {
    auto it = terms_.find(offset);
    return it == terms_.end() ? Fraction(ctx_.table) : it->second;
}

void LadderExpr::add_term(int offset, const Fraction& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(offset);
    if (it == terms_.end()) {
        terms_.emplace(offset, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

LadderExpr LadderExpr::operator-() const {
    LadderExpr out(ctx_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

LadderExpr& LadderExpr::operator+=(const LadderExpr& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, c);
    return *this;
}

LadderExpr& LadderExpr::operator-=(const LadderExpr& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
    return *this;
}

LadderExpr LadderExpr::scaled(const Fraction& c) const {
    LadderExpr out(ctx_);
    for (const auto& [k, v] : terms_) out.add_term(k, v * c);
    return out;
}

namespace {

// prod_{t=from}^{to} Phi(N+t), empty product = 1.
Fraction phi_product(const LadderContext& ctx, int from, int to) {
    Fraction out(ctx.table, 1);
    for (int t = from; t <= to; ++t) out *= ctx.phi_value(t);
    return out;
}

}  // namespace

LadderExpr operator*(const LadderExpr& l, const LadderExpr& r) {
    const LadderContext& ctx = l.ctx_;
    LadderExpr out(ctx);
    for (const auto& [i, f] : l.terms_) {
        for (const auto& [j, g] : r.terms_) {
            if (i >= 0 && j >= 0) {
                // (b^t)^i f (b^t)^j g = (b^t)^(i+j) f(N+j) g
                out.add_term(i + j, shift_n(ctx, f, j) * g);
            } else if (i < 0 && j < 0) {
                // f b^m g b^q = f g(N+m) b^(m+q)
                out.add_term(i + j, f * shift_n(ctx, g, -i));
            } else if (i >= 0) {
                // (b^t)^i h b^m with h = f g
                const int m = -j;
                Fraction h = f * g;
                const int c = std::min(i, m);
                // (b^t)^c h b^c = h(N-c) Phi(N) Phi(N-1) ... Phi(N-c+1)
                out.add_term(i - m, shift_n(ctx, h, -c) * phi_product(ctx, -c + 1, 0));
            } else {
                // f b^m (b^t)^j g
                const int m = -i;
                if (m >= j) {
                    // b^m (b^t)^j = prod_{t=1..j} Phi(N+m-j+t) b^(m-j)
                    out.add_term(i + j, f * phi_product(ctx, m - j + 1, m) * shift_n(ctx, g, m - j));
                } else {
                    // b^m (b^t)^j = (b^t)^(j-m) prod_{t=1..m} Phi(N+t)
                    out.add_term(i + j, shift_n(ctx, f, j - m) * phi_product(ctx, j - m + 1, j) * g);
                }
            }
        }
    }
    return out;
}

LadderExpr commutator(const LadderExpr& a, const LadderExpr& b) { return a * b - b * a; }
LadderExpr anticommutator(const LadderExpr& a, const LadderExpr& b) { return a * b + b * a; }

std::string LadderExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        if (!out.empty()) out += " + ";
        if (k > 0) out += "bt^" + std::to_string(k) + "*";
        out += "(" + c.to_string() + ")";
        if (k < 0) out += "*b^" + std::to_string(-k);
    }
    return out;
}

}  // namespace cubalg
