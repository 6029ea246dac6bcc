#include "cubalg/ladder/structure.hpp"

#include "cubalg/error.hpp"

namespace cubalg {

TablePtr phi_table() {
    static const TablePtr table =
        SymbolTable::make({"x", "u", "E", "h", "a", "p"}, DenominatorPolicy{.any_symbol = true, .symbols = {}, .any_linear = true, .atoms = {}});
    return table;
}

Fraction phi_at(const Fraction& phi, const Rational& x) { return phi.substitute(0, Fraction(phi.table(), x)); }

namespace {

// Multiplies an affine row by the product of its denominators.
std::vector<MultiPoly> clear_row(const std::vector<Fraction>& row, const TablePtr& t) {
    std::vector<DenFactor> common;
    for (const auto& f : row)
        for (const auto& d : f.den()) {
            auto it = std::find_if(common.begin(), common.end(), [&](const DenFactor& c) { return c.atom == d.atom; });
            if (it == common.end())
                common.push_back(d);
            else
                it->power = std::max(it->power, d.power);
        }
    MultiPoly D(t, 1);
    for (const auto& d : common) D *= d.atom.pow(static_cast<unsigned>(d.power));
    std::vector<MultiPoly> out;
    for (const auto& f : row) out.push_back((f * Fraction(D)).as_poly());
    return out;
}

void require_diagonal(const LadderExpr& e, const char* what) {
    for (const auto& [off, c] : e.terms())
        if (off != 0 && !c.is_zero())
            throw Error(ErrorKind::RealizationMismatch, "ladder",
                        std::string(what) + " has a nonzero component at offset " + std::to_string(off));
}

}  // namespace

StructureFunction derive_structure_function(const CubicAlgebraSpec& spec, const std::optional<CasimirExpression>& casimir,
                                            const std::optional<Fraction>& rho) {
    OscRealization r = rho ? derive_realization(spec, *rho) : derive_realization(spec);
    const LadderContext& ctx = r.ctx;
    const TablePtr& t = ctx.table;
    LadderConstants c = constants_from_spec(spec, ctx);
    CasimirExpression kx = casimir ? *casimir : casimir_coefficients(spec);
    std::vector<Fraction> coef;
    for (const auto& f : kx.coef) coef.push_back(f.rebase(t));

    LadderExpr rel = bc_residual(r, c);
    LadderExpr K = casimir_in_realization(r, coef);
    K -= LadderExpr::diagonal(ctx, spec.k.rebase(t));
    require_diagonal(rel, "[B,C] relation");
    require_diagonal(K, "Casimir");

    const int F0 = ctx.phi_symbol(0), F1 = ctx.phi_symbol(1);
    auto row1 = clear_row(affine_parts(rel.coefficient(0), {F1, F0}), t);
    auto row2 = clear_row(affine_parts(K.coefficient(0), {F1, F0}), t);
    const MultiPoly &p1 = row1[0], &q1 = row1[1], &s1 = row1[2];
    const MultiPoly &p2 = row2[0], &q2 = row2[1], &s2 = row2[2];
    MultiPoly det = p1 * q2 - q1 * p2;
    if (det.is_zero())
        throw Error(ErrorKind::SingularSystem, "ladder", "the equations for Phi(N) and Phi(N+1) are dependent");
    MultiPoly X1 = q1 * s2 - s1 * q2;  // Phi(N+1) * det
    MultiPoly X0 = p2 * s1 - p1 * s2;  // Phi(N) * det

    auto sh = [&](const MultiPoly& m) { return m.shift(ctx.n, Rational(1)); };
    if (X1 * sh(det) != sh(X0) * det)
        throw Error(ErrorKind::ShiftInconsistency, "ladder", "solved Phi(N+1) is not Phi(N) shifted by one");

    Exponents content = det.content_monomial();
    MultiPoly mono = MultiPoly::monomial(t, content, det.leading().coef);
    MultiPoly rest = *det.divide_exact(mono);
    auto q = X0.divide_exact(rest);
    if (!q) throw Error(ErrorKind::NonPolynomialPhi, "ladder", "Phi(N) is not a polynomial in N");
    Fraction phi_n = Fraction(*q) / Fraction(mono);
    for (const auto& d : phi_n.den())
        if (d.atom.depends_on(ctx.n))
            throw Error(ErrorKind::NonPolynomialPhi, "ladder", "Phi(N) has a pole at " + d.atom.to_string() + " = 0");

    const TablePtr& pt = phi_table();
    auto psym = [&](const char* name) { return Fraction(MultiPoly::symbol(pt, name)); };
    std::map<int, Fraction> values{{ctx.n, psym("x") + psym("u")},
                                   {t->require("E"), psym("E")},
                                   {t->require("h"), psym("h")},
                                   {t->require("a"), psym("a")}};
    StructureFunction out{r, phi_n, compose_fraction(phi_n, values, pt), 0};
    out.degree = out.phi.degree(0);
    return out;
}

}  // namespace cubalg
