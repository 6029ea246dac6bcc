#include "cubalg/algebra/casimir.hpp"

#include <map>
#include <mutex>
#include <optional>

#include "cubalg/error.hpp"
#include "cubalg/exactnum/linsolve.hpp"
#include "cubalg/ladder/realization.hpp"

namespace cubalg {

namespace {

constexpr std::array<const char*, 9> kConstNames{"al", "be", "ga", "de", "ep", "mu", "nu", "xi", "ze"};

LadderContext generic_context() {
    std::vector<std::string> extra(kConstNames.begin(), kConstNames.end());
    extra.emplace_back("s");
    for (int j = 1; j <= 9; ++j) extra.push_back("c" + std::to_string(j));
    return LadderContext::make(extra);
}

// Groups the numerator by powers of n and turns every group into one linear row in c1..c9.
void collect_rows(const Fraction& eq, const LadderContext& ctx, const std::array<int, 9>& csym,
                  std::vector<std::vector<Fraction>>& rows, std::vector<Fraction>& rhs) {
    if (eq.is_zero()) return;
    std::map<int, Rational> zero_c;
    for (int s : csym) zero_c[s] = 0;
    for (const MultiPoly& group : eq.num().coefficients_in(ctx.n)) {
        if (group.is_zero()) continue;
        std::vector<Fraction> row;
        for (int s : csym) {
            if (group.degree(s) > 1) throw Error(ErrorKind::InvalidArgument, "algebra", "Casimir condition is not linear");
            auto parts = group.coefficients_in(s);
            row.emplace_back(parts.size() > 1 ? parts[1] : MultiPoly(ctx.table));
        }
        rows.push_back(std::move(row));
        rhs.emplace_back(-group.evaluate_partial(zero_c));
    }
}

GenericCasimir derive(int case_id) {
    GenericCasimir g{case_id, generic_context(), {}, {}};
    const LadderContext& ctx = g.ctx;
    const TablePtr& t = ctx.table;
    auto sym = [&](const std::string& name) { return Fraction(MultiPoly::symbol(t, name)); };
    for (std::size_t i = 0; i < 9; ++i) g.constant_symbols[i] = t->require(kConstNames[i]);
    std::array<int, 9> csym{};
    for (int j = 0; j < 9; ++j) csym[static_cast<std::size_t>(j)] = t->require("c" + std::to_string(j + 1));

    LadderConstants c{sym("al"), sym("be"), sym("ga"), sym("de"), sym("ep"),
                      sym("mu"), sym("nu"), sym("xi"), sym("ze"), std::nullopt};
    if (case_id == 2) {
        c.beta = Fraction(t);
        c.delta = sym("s") * sym("s");
        c.sqrt_delta = sym("s");
    }
    OscRealization r = realize(ctx, c, Fraction(t, 1));

    std::vector<Fraction> kc(11, Fraction(t));
    kc[0] = Fraction(t, 1);
    for (int j = 0; j < 9; ++j) kc[static_cast<std::size_t>(j + 1)] = Fraction(MultiPoly::symbol(t, csym[static_cast<std::size_t>(j)]));
    LadderExpr K = casimir_in_realization(r, kc);
    LadderExpr rel = bc_residual(r, c);

    std::vector<std::vector<Fraction>> rows;
    std::vector<Fraction> rhs;
    for (const auto& [off, coef] : K.terms())
        if (off != 0) collect_rows(coef, ctx, csym, rows, rhs);
    for (const auto& [off, coef] : rel.terms())
        if (off != 0 && !coef.is_zero())
            throw Error(ErrorKind::RelationFailure, "algebra", "[B,C] relation has an off-diagonal residual");

    // rel0 = eP Phi(N+1) + eQ Phi(N) + eR = 0 and K0 = k1 Phi(N+1) + k0 Phi(N) + kc.
    const int F0 = ctx.phi_symbol(0), F1 = ctx.phi_symbol(1);
    auto e = affine_parts(rel.coefficient(0), {F1, F0});
    auto k = affine_parts(K.coefficient(0), {F1, F0});
    auto sh = [&](const Fraction& f) { return shift_n(ctx, f, 1); };
    const Fraction &eP = e[0], &eQ = e[1], &eR = e[2];
    const Fraction eP1 = sh(eP), eQ1 = sh(eQ), eR1 = sh(eR);
    const Fraction k1 = k[0], k0 = k[1], kk = k[2];
    const Fraction k11 = sh(k1), k01 = sh(k0), kk1 = sh(kk);
    // Eliminating Phi(N) and Phi(N+2) with the recurrence, K0(N+1) - K0(N) must vanish
    // identically in Phi(N+1); E1 and E2 are its two coefficients with denominators cleared.
    Fraction u1 = k11 * eQ1 - k01 * eP1;
    Fraction E1 = -(u1 * eQ) - (k1 * eQ - k0 * eP) * eP1;
    Fraction E2 = -(u1 * eR1 * eQ) + (kk1 * eQ1 - k01 * eR1) * eP1 * eQ - (kk * eQ - k0 * eR) * eP1 * eQ1;
    collect_rows(E1, ctx, csym, rows, rhs);
    collect_rows(E2, ctx, csym, rows, rhs);

    auto sol = solve_exact(std::move(rows), std::move(rhs), 9);
    if (sol.status == LinearSolution::Status::Inconsistent)
        throw Error(ErrorKind::RelationFailure, "algebra", "no Casimir of the assumed shape exists");
    if (sol.status == LinearSolution::Status::Dependent)
        throw Error(ErrorKind::Underdetermined, "algebra",
                    "Casimir coefficient c" + std::to_string(sol.dependent_column + 1) + " is not determined");

    const int s = t->require("s");
    for (std::size_t j = 0; j < 9; ++j) {
        if (!sol.x[j].is_polynomial())
            throw Error(ErrorKind::InvalidArgument, "algebra", "Casimir coefficient is not polynomial: " + sol.x[j].to_string());
        MultiPoly p = sol.x[j].as_poly();
        if (case_id == 2 && p.depends_on(s)) {
            auto parts = p.coefficients_in(s);
            MultiPoly out(t);
            MultiPoly de = MultiPoly::symbol(t, "de");
            for (std::size_t d = 0; d < parts.size(); ++d) {
                if (parts[d].is_zero()) continue;
                if (d % 2) throw Error(ErrorKind::InvalidArgument, "algebra", "odd power of sqrt(delta) in Casimir");
                out += parts[d] * de.pow(static_cast<unsigned>(d / 2));
            }
            p = out;
        }
        g.c.push_back(p);
    }
    return g;
}

}  // namespace

const GenericCasimir& generic_casimir(int case_id) {
    if (case_id != 1 && case_id != 2)
        throw Error(ErrorKind::UnsupportedCase, "algebra", "no realization case " + std::to_string(case_id));
    static std::once_flag once[2];
    static std::optional<GenericCasimir> cache[2];
    const std::size_t i = static_cast<std::size_t>(case_id - 1);
    std::call_once(once[i], [&] { cache[i].emplace(derive(case_id)); });
    return *cache[i];
}

CasimirExpression specialize(const GenericCasimir& g, const CubicAlgebraSpec& spec) {
    std::map<int, Fraction> values;
    for (std::size_t i = 0; i < 9; ++i) values.emplace(g.constant_symbols[i], spec[i]);
    CasimirExpression out;
    out.coef[0] = Fraction(algebra_table(), 1);
    for (std::size_t j = 0; j < 9; ++j) out.coef[j + 1] = compose_poly(g.c[j], values, algebra_table());
    return out;
}

DiffOp energy_operator(const Fraction& f, const DiffOp& H) {
    const TablePtr& wt = H.table();
    const int E = f.table()->require("E");
    for (const auto& d : f.den())
        if (d.atom.depends_on(E))
            throw Error(ErrorKind::InvalidArgument, "algebra", "coefficient is not polynomial in E: " + f.to_string());
    std::vector<std::pair<MultiPoly, int>> den;
    for (const auto& d : f.den()) den.emplace_back(d.atom, d.power);
    DiffOp out(wt);
    DiffOp Hm = DiffOp::identity(wt);
    auto parts = f.num().coefficients_in(E);
    for (std::size_t m = 0; m < parts.size(); ++m) {
        if (m > 0) Hm = Hm * H;
        if (parts[m].is_zero()) continue;
        out += Hm.scaled(Fraction::from_parts(parts[m], den).rebase(wt));
    }
    return out;
}

DiffOp casimir_operator(const CasimirExpression& k, const Q5Operators& q) {
    const DiffOp &A = q.A, &B = q.B, &C = q.C;
    DiffOp A2 = A * A, B2 = B * B;
    const std::array<DiffOp, 11> basis{C * C,  anticommutator(A2, B), anticommutator(A, B2), anticommutator(A, B),
                                       B2,     B,                     A2 * A2,               A2 * A,
                                       A2,     A,                     DiffOp::identity(A.table())};
    DiffOp out(A.table());
    for (std::size_t i = 0; i < 11; ++i) {
        if (k.coef[i].is_zero()) continue;
        out += energy_operator(k.coef[i], q.H) * basis[i];
    }
    return out;
}

}  // namespace cubalg
