#include "cubalg/weylop/diffop.hpp"

#include <omp.h>

#include "cubalg/error.hpp"

namespace cubalg {

TablePtr weyl_table() {
    static const TablePtr table = SymbolTable::make(
        {"x", "y", "h", "a", "i"}, DenominatorPolicy{.any_symbol = false, .symbols = {"a"}, .atoms = {"x-a", "x+a"}},
        std::string("i"));
    return table;
}

DiffOp::DiffOp(TablePtr table) : table_(std::move(table)) {}

DiffOp DiffOp::multiplication(const Fraction& f) {
    DiffOp op(f.table());
    op.add_term({0, 0}, f);
    return op;
}

DiffOp DiffOp::dx(TablePtr table, int order) {
    DiffOp op(table);
    op.add_term({order, 0}, Fraction(table, 1));
    return op;
}

DiffOp DiffOp::dy(TablePtr table, int order) {
    DiffOp op(table);
    op.add_term({0, order}, Fraction(table, 1));
    return op;
}

int DiffOp::order() const {
    int out = 0;
    for (const auto& [k, c] : terms_) out = std::max(out, k.first + k.second);
    return out;
}

Fraction DiffOp::coefficient(Key k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Fraction(table_) : it->second;
}

void DiffOp::add_term(Key k, const Fraction& c) {
    if (!c.table()->compatible(*table_))
        throw Error(ErrorKind::MismatchedSymbols, "weylop", "coefficient uses a different symbol table");
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

DiffOp DiffOp::operator-() const {
    DiffOp out(table_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, c);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
    return *this;
}

DiffOp DiffOp::scaled(const Fraction& c) const {
    DiffOp out(table_);
    for (const auto& [k, v] : terms_) out.add_term(k, c * v);
    return out;
}

DiffOp DiffOp::pow(int n) const {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "weylop", "negative operator power");
    DiffOp out = identity(table_);
    for (int k = 0; k < n; ++k) out = compose(out, *this);
    return out;
}

Fraction partial(const Fraction& f, int j, int k) {
    Fraction out = f;
    for (int s = 0; s < j && !out.is_zero(); ++s) out = out.derivative(0);
    for (int s = 0; s < k && !out.is_zero(); ++s) out = out.derivative(1);
    return out;
}

Fraction DiffOp::apply(const Fraction& f) const {
    Fraction out(table_);
    for (const auto& [k, c] : terms_) out += c * partial(f, k.first, k.second);
    return out;
}

std::string DiffOp::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        if (k.first) out += "*Dx" + (k.first > 1 ? "^" + std::to_string(k.first) : std::string());
        if (k.second) out += "*Dy" + (k.second > 1 ? "^" + std::to_string(k.second) : std::string());
    }
    return out;
}

namespace {

long binomial(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct LeftTerm {
    DiffOp::Key key;
    const Fraction* coef;
};

// Expands one left term f d^a against every right term g d^b:
// d^a g = sum_c binom(a,c) g^(c) d^(a-c).
void expand_term(const LeftTerm& lt, const std::vector<std::pair<DiffOp::Key, std::vector<std::vector<Fraction>>>>& right,
                 DiffOp& acc) {
    const auto [ax, ay] = lt.key;
    for (const auto& [rk, derivs] : right) {
        for (int cx = 0; cx <= ax; ++cx)
            for (int cy = 0; cy <= ay; ++cy) {
                const Fraction& g = derivs[static_cast<std::size_t>(cx)][static_cast<std::size_t>(cy)];
                if (g.is_zero()) continue;
                Fraction c = (*lt.coef * g).scaled(Rational(binomial(ax, cx) * binomial(ay, cy)));
                acc.add_term({ax - cx + rk.first, ay - cy + rk.second}, c);
            }
    }
}

// Derivative tables of every right coefficient up to the left operand's orders.
std::vector<std::pair<DiffOp::Key, std::vector<std::vector<Fraction>>>> right_derivatives(const DiffOp& left,
                                                                                          const DiffOp& right) {
    int mx = 0, my = 0;
    for (const auto& [k, c] : left.terms()) {
        mx = std::max(mx, k.first);
        my = std::max(my, k.second);
    }
    std::vector<std::pair<DiffOp::Key, std::vector<std::vector<Fraction>>>> out;
    for (const auto& [k, g] : right.terms()) {
        std::vector<std::vector<Fraction>> d(static_cast<std::size_t>(mx + 1));
        for (int j = 0; j <= mx; ++j) {
            Fraction row = j == 0 ? g : d[static_cast<std::size_t>(j - 1)][0].derivative(0);
            d[static_cast<std::size_t>(j)].push_back(row);
            for (int s = 1; s <= my; ++s) d[static_cast<std::size_t>(j)].push_back(d[static_cast<std::size_t>(j)].back().derivative(1));
        }
        out.emplace_back(k, std::move(d));
    }
    return out;
}

void check_tables(const DiffOp& l, const DiffOp& r) {
    if (!l.table()->compatible(*r.table()))
        throw Error(ErrorKind::MismatchedSymbols, "weylop", "operators use different symbol tables");
}

}  // namespace

DiffOp compose_serial(const DiffOp& left, const DiffOp& right) {
    check_tables(left, right);
    auto derivs = right_derivatives(left, right);
    DiffOp out(left.table());
    for (const auto& [k, c] : left.terms()) expand_term({k, &c}, derivs, out);
    return out;
}

DiffOp compose(const DiffOp& left, const DiffOp& right) {
    check_tables(left, right);
    auto derivs = right_derivatives(left, right);
    std::vector<LeftTerm> lefts;
    for (const auto& [k, c] : left.terms()) lefts.push_back({k, &c});
    const int n = static_cast<int>(lefts.size());
    const int threads = omp_get_max_threads();
    std::vector<DiffOp> partial_sums(static_cast<std::size_t>(threads), DiffOp(left.table()));
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < n; ++t)
        expand_term(lefts[static_cast<std::size_t>(t)], derivs, partial_sums[static_cast<std::size_t>(omp_get_thread_num())]);
    // Exact addition is order independent, so the merge is deterministic.
    DiffOp out(left.table());
    for (const auto& p : partial_sums) out += p;
    return out;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }
DiffOp anticommutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) + compose(b, a); }

}  // namespace cubalg
