#include "cubalg/weylop/q5.hpp"

#include <map>
#include <tuple>

#include "cubalg/error.hpp"
#include "cubalg/exactnum/linsolve.hpp"
#include "cubalg/exactnum/parse.hpp"

namespace cubalg {

namespace {

Fraction W(const char* text) { return parse_expr(text, weyl_table()); }

DiffOp mul(const char* text) { return DiffOp::multiplication(W(text)); }

}  // namespace

Fraction q5_potential() { return W("h^2*((x^2+y^2)/(8*a^4) + 1/(x-a)^2 + 1/(x+a)^2)"); }

Q5Operators build_q5(AngularSign sign) {
    const TablePtr t = weyl_table();
    Q5Operators q;
    q.sign = sign;
    q.Px = DiffOp::dx(t).scaled(W("-i*h"));
    q.Py = DiffOp::dy(t).scaled(W("-i*h"));
    DiffOp Px2 = q.Px * q.Px;
    DiffOp Py2 = q.Py * q.Py;
    q.H = (Px2 + Py2).scaled(W("1/2")) + DiffOp::multiplication(q5_potential());
    q.A = (Px2 - Py2).scaled(W("1/2")) + mul("h^2*((x^2-y^2)/(8*a^4) + 1/(x-a)^2 + 1/(x+a)^2)");
    q.L = mul("x") * q.Py - mul("y") * q.Px;
    if (sign == AngularSign::YPxMinusXPy) q.L = -q.L;
    DiffOp F1 = mul("y*((4*a^2-x^2)/(4*a^4) - 6*(x^2+a^2)/(x^2-a^2)^2)");
    DiffOp F2 = mul("x*((x^2-4*a^2)/(4*a^4) - 2/(x^2-a^2) + 4*(x^2+a^2)/(x^2-a^2)^2)");
    Fraction h2 = W("h^2");
    q.B = anticommutator(q.L, Px2) + anticommutator(F1, q.Px).scaled(h2) + anticommutator(F2, q.Py).scaled(h2);
    q.C = commutator(q.A, q.B);
    return q;
}

Q5Operators build_q5_verified() {
    for (AngularSign s : {AngularSign::XPyMinusYPx, AngularSign::YPxMinusXPy}) {
        Q5Operators q = build_q5(s);
        if (commutator(q.H, q.B).is_zero()) return q;
    }
    throw Error(ErrorKind::RelationFailure, "weylop", "[H,B] does not vanish for either orientation of L");
}

TablePtr scalar_table() {
    static const TablePtr table = SymbolTable::make({"h", "a", "i"}, DenominatorPolicy{}, std::string("i"));
    return table;
}

namespace {

using RowKey = std::tuple<int, int, int, int>;  // derivative orders, x and y exponents

}  // namespace

std::vector<Fraction> express_in_basis(const DiffOp& target, const std::vector<DiffOp>& basis) {
    const TablePtr wt = target.table();
    const TablePtr st = scalar_table();
    const std::size_t n = basis.size();

    // Common denominator of every coefficient involved.
    std::vector<DenFactor> common;
    auto absorb = [&](const DiffOp& op) {
        for (const auto& [k, c] : op.terms())
            for (const auto& f : c.den()) {
                auto it = std::find_if(common.begin(), common.end(), [&](const DenFactor& d) { return d.atom == f.atom; });
                if (it == common.end())
                    common.push_back(f);
                else
                    it->power = std::max(it->power, f.power);
            }
    };
    absorb(target);
    for (const auto& b : basis) absorb(b);
    MultiPoly D(wt, 1);
    for (const auto& f : common) D *= f.atom.pow(static_cast<unsigned>(f.power));

    // Row equations: for every (derivative, x^p y^q) slot, sum_i c_i M_i = T.
    std::map<RowKey, std::pair<std::vector<MultiPoly>, MultiPoly>> rows;
    auto scatter = [&](const DiffOp& op, int column) {
        for (const auto& [k, c] : op.terms()) {
            MultiPoly cleared = c.num() * *D.divide_exact(c.den_poly());
            for (const auto& t : cleared.terms()) {
                RowKey key{k.first, k.second, t.exp[0], t.exp[1]};
                auto it = rows.find(key);
                if (it == rows.end())
                    it = rows.emplace(key, std::make_pair(std::vector<MultiPoly>(n, MultiPoly(st)), MultiPoly(st))).first;
                Exponents e{};
                e[0] = t.exp[2];
                e[1] = t.exp[3];
                e[2] = t.exp[4];
                MultiPoly m = MultiPoly::monomial(st, e, t.coef);
                if (column < 0)
                    it->second.second += m;
                else
                    it->second.first[static_cast<std::size_t>(column)] += m;
            }
        }
    };
    scatter(target, -1);
    for (std::size_t i = 0; i < n; ++i) scatter(basis[i], static_cast<int>(i));

    std::vector<std::vector<Fraction>> lhs;
    std::vector<Fraction> rhs;
    for (auto& [key, r] : rows) {
        rhs.emplace_back(r.second);
        std::vector<Fraction> row;
        for (auto& m : r.first) row.emplace_back(m);
        lhs.push_back(std::move(row));
    }
    auto sol = solve_exact(std::move(lhs), std::move(rhs), n);
    if (sol.status == LinearSolution::Status::Inconsistent)
        throw Error(ErrorKind::NotInSpan, "weylop", "target is not in the span of the basis (residual row)");
    if (sol.status == LinearSolution::Status::Dependent)
        throw Error(ErrorKind::Ambiguous, "weylop",
                    "basis element " + std::to_string(sol.dependent_column) + " is dependent on the others");
    return sol.x;
}

}  // namespace cubalg
