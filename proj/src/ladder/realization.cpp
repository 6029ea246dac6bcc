#include "cubalg/ladder/realization.hpp"

#include "cubalg/error.hpp"

namespace cubalg {

LadderExpr OscRealization::A_op() const { return LadderExpr::diagonal(ctx, A); }

LadderExpr OscRealization::B_op() const {
    LadderExpr B = LadderExpr::diagonal(ctx, b);
    B.add_term(1, rho);
    B.add_term(-1, Fraction(ctx.table, 1));
    return B;
}

const LadderContext& spec_context() {
    static const LadderContext ctx = LadderContext::make({"E", "h", "a"});
    return ctx;
}

LadderConstants constants_from_spec(const CubicAlgebraSpec& spec, const LadderContext& ctx) {
    LadderConstants c{spec.alpha.rebase(ctx.table), spec.beta.rebase(ctx.table), spec.gamma.rebase(ctx.table),
                      spec.delta.rebase(ctx.table), spec.epsilon.rebase(ctx.table), spec.mu.rebase(ctx.table),
                      spec.nu.rebase(ctx.table),    spec.xi.rebase(ctx.table),      spec.zeta.rebase(ctx.table),
                      std::nullopt};
    if (c.beta.is_zero() && !c.delta.is_zero()) c.sqrt_delta = sqrt_exact(c.delta);
    return c;
}

Fraction choose_rho(int case_id, const LadderContext& ctx, const Fraction& beta) {
    if (case_id == 2) return Fraction(ctx.table, 1);
    if (case_id != 1) throw Error(ErrorKind::UnsupportedCase, "ladder", "no realization case for beta = delta = 0");
    MultiPoly n = MultiPoly::symbol(ctx.table, ctx.n);
    MultiPoly one(ctx.table, 1);
    Fraction rho = Fraction::from_parts(MultiPoly(ctx.table, make_rational(1, 3 * 4096)),
                                        {{n, 1}, {n + one, 1}, {n.scaled(2) + one, 2}});
    return rho / beta.pow(8);
}

OscRealization realize(const LadderContext& ctx, const LadderConstants& c, const Fraction& rho) {
    OscRealization r{ctx, 0, Fraction(ctx.table), Fraction(ctx.table), rho};
    const Fraction n = ctx.n_symbol();
    const Fraction quarter(ctx.table, make_rational(1, 4));
    Fraction numer(ctx.table);
    if (!c.beta.is_zero()) {
        r.case_id = 1;
        r.A = c.beta.scaled(make_rational(1, 2)) * (n * n - quarter - c.delta / (c.beta * c.beta));
        // 2 beta A + delta = beta^2 (n - 1/2)(n + 1/2)
        const Fraction half(ctx.table, make_rational(1, 2));
        numer = -(c.alpha * r.A * r.A + c.gamma * r.A + c.epsilon);
        r.b = numer / (c.beta * c.beta) / ((n - half) * (n + half));
    } else if (!c.delta.is_zero()) {
        r.case_id = 2;
        if (!c.sqrt_delta)
            throw Error(ErrorKind::InvalidArgument, "ladder",
                        "Case 2 needs sqrt(delta) in closed form; delta = " + c.delta.to_string() + " is not a square");
        r.A = *c.sqrt_delta * n;
        r.b = -(c.alpha * r.A * r.A + c.gamma * r.A + c.epsilon) / c.delta;
    } else {
        throw Error(ErrorKind::UnsupportedCase, "ladder", "unsupported case: beta = 0 and delta = 0");
    }
    return r;
}

OscRealization derive_realization(const CubicAlgebraSpec& spec) {
    const LadderContext& ctx = spec_context();
    if (spec.realization_case() == 0)
        throw Error(ErrorKind::UnsupportedCase, "ladder", "unsupported case: beta = 0 and delta = 0");
    return realize(ctx, constants_from_spec(spec, ctx), choose_rho(spec.realization_case(), ctx, spec.beta.rebase(ctx.table)));
}

OscRealization derive_realization(const CubicAlgebraSpec& spec, const Fraction& rho) {
    const LadderContext& ctx = spec_context();
    return realize(ctx, constants_from_spec(spec, ctx), rho.rebase(ctx.table));
}

std::array<Fraction, 2> realization_residuals(const OscRealization& r, const LadderConstants& c) {
    Fraction A1 = shift_n(r.ctx, r.A, 1);
    Fraction dA = A1 - r.A;
    Fraction first = dA * dA - c.beta * (A1 + r.A) - c.delta;
    Fraction second = (c.beta.scaled(2) * r.A + c.delta) * r.b + c.alpha * r.A * r.A + c.gamma * r.A + c.epsilon;
    return {first, second};
}

LadderExpr bc_residual(const OscRealization& r, const LadderConstants& c) {
    LadderExpr A = r.A_op(), B = r.B_op();
    LadderExpr C = commutator(A, B);
    LadderExpr A2 = A * A;
    LadderExpr rhs = (A2 * A).scaled(c.mu) + A2.scaled(c.nu) - (B * B).scaled(c.beta) - anticommutator(A, B).scaled(c.alpha) +
                     A.scaled(c.xi) - B.scaled(c.gamma) + LadderExpr::diagonal(r.ctx, c.zeta);
    return commutator(B, C) - rhs;
}

LadderExpr casimir_in_realization(const OscRealization& r, const std::vector<Fraction>& k) {
    LadderExpr A = r.A_op(), B = r.B_op();
    LadderExpr C = commutator(A, B);
    LadderExpr A2 = A * A, B2 = B * B;
    LadderExpr out = (C * C).scaled(k[0]);
    auto add = [&](const LadderExpr& e, const Fraction& c) {
        if (!c.is_zero()) out += e.scaled(c);
    };
    add(anticommutator(A2, B), k[1]);
    add(anticommutator(A, B2), k[2]);
    add(anticommutator(A, B), k[3]);
    add(B2, k[4]);
    add(B, k[5]);
    add(A2 * A2, k[6]);
    add(A2 * A, k[7]);
    add(A2, k[8]);
    add(A, k[9]);
    add(LadderExpr::diagonal(r.ctx, Fraction(r.ctx.table, 1)), k[10]);
    return out;
}

std::vector<Fraction> affine_parts(const Fraction& f, const std::vector<int>& syms) {
    const MultiPoly& num = f.num();
    std::vector<std::pair<MultiPoly, int>> den;
    for (const auto& d : f.den()) den.emplace_back(d.atom, d.power);
    std::vector<Fraction> out;
    std::map<int, Rational> zeros;
    for (int s : syms) zeros[s] = 0;
    for (int s : syms) {
        if (num.degree(s) > 1) throw Error(ErrorKind::InvalidArgument, "ladder", "expression is not affine in the unknowns");
        auto c = num.coefficients_in(s);
        MultiPoly lin = c.size() > 1 ? c[1] : MultiPoly(f.table());
        for (int t : syms)
            if (lin.depends_on(t)) throw Error(ErrorKind::InvalidArgument, "ladder", "expression has products of unknowns");
        out.push_back(Fraction::from_parts(lin, den));
    }
    out.push_back(Fraction::from_parts(num.evaluate_partial(zeros), den));
    return out;
}

}  // namespace cubalg
