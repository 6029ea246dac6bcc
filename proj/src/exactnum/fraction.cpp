#include "cubalg/exactnum/fraction.hpp"

#include <algorithm>
#include <optional>

#include "cubalg/error.hpp"
#include "cubalg/exactnum/univariate.hpp"

namespace cubalg {

namespace {

int lowest_symbol(const MultiPoly& p) {
    auto s = p.support();
    return s.empty() ? -1 : *std::min_element(s.begin(), s.end());
}

// Splits p = scale * atom when p is linear in its lowest symbol with a constant coefficient.
std::optional<std::pair<Rational, MultiPoly>> as_atom(const MultiPoly& p) {
    const int s = lowest_symbol(p);
    if (s < 0 || s == p.table()->imaginary()) return std::nullopt;
    if (p.table()->imaginary() >= 0 && p.depends_on(p.table()->imaginary())) return std::nullopt;
    if (p.degree(s) != 1) return std::nullopt;
    auto coeffs = p.coefficients_in(s);
    if (!coeffs[1].is_constant()) return std::nullopt;
    Rational scale = coeffs[1].constant_term();
    return std::make_pair(scale, p.scaled(1 / scale));
}

bool is_bare_symbol(const MultiPoly& atom, int& sym) {
    if (!atom.is_monomial() || atom.leading().coef != 1) return false;
    auto s = atom.support();
    if (s.size() != 1 || atom.total_degree() != 1) return false;
    sym = s.front();
    return true;
}

MultiPoly linear_form_poly(const TablePtr& table, const LinearForm& f) {
    MultiPoly out(table, f.constant);
    for (const auto& [idx, c] : f.coefficients) out += MultiPoly::symbol(table, idx).scaled(c);
    return out;
}

bool atom_allowed(const MultiPoly& atom) {
    const auto& table = *atom.table();
    int sym = -1;
    if (is_bare_symbol(atom, sym)) return table.symbol_atom_allowed(sym);
    if (table.policy().any_linear) return true;
    for (const auto& f : table.declared_atoms())
        if (linear_form_poly(atom.table(), f) == atom) return true;
    return false;
}

// Quotient by an atom (s - c), or nullopt when not divisible.
std::optional<MultiPoly> divide_by_atom(const MultiPoly& p, const MultiPoly& atom) {
    const int s = lowest_symbol(atom);
    MultiPoly c = MultiPoly::symbol(atom.table(), s) - atom;
    return p.divide_linear(s, c);
}

void add_factor(std::vector<DenFactor>& out, const MultiPoly& atom, int power) {
    for (auto& f : out)
        if (f.atom == atom) {
            f.power += power;
            return;
        }
    out.push_back({atom, power});
}

void sort_factors(std::vector<DenFactor>& f) {
    f.erase(std::remove_if(f.begin(), f.end(), [](const DenFactor& d) { return d.power == 0; }), f.end());
    std::sort(f.begin(), f.end(), [](const DenFactor& l, const DenFactor& r) { return l.atom.compare(r.atom) < 0; });
}

[[noreturn]] void disallowed(const MultiPoly& p) {
    throw Error(ErrorKind::DisallowedDenominator, "exactnum",
                "denominator factor (" + p.to_string() + ") is not an allowed atom");
}

std::string atom_string(const MultiPoly& atom, int power) {
    std::string s = atom.size() == 1 ? atom.to_string() : "(" + atom.to_string() + ")";
    if (power != 1) s += "^" + std::to_string(power);
    return s;
}

}  // namespace

std::pair<Rational, std::vector<DenFactor>> factor_into_atoms(const MultiPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::DivisionByZero, "exactnum", "division by zero");
    const TablePtr& table = p.table();
    std::vector<DenFactor> out;
    Exponents mono = p.content_monomial();
    MultiPoly q = p;
    bool has_mono = false;
    for (std::size_t k = 0; k < kMaxSymbols; ++k) has_mono = has_mono || mono[k] != 0;
    if (has_mono) {
        for (std::size_t k = 0; k < kMaxSymbols; ++k) {
            if (mono[k] == 0) continue;
            MultiPoly atom = MultiPoly::symbol(table, static_cast<int>(k));
            if (!atom_allowed(atom)) disallowed(atom);
            add_factor(out, atom, mono[k]);
        }
        q = *q.divide_exact(MultiPoly::monomial(table, mono, 1));
    }
    for (const auto& f : table->declared_atoms()) {
        if (q.is_constant()) break;
        MultiPoly atom = linear_form_poly(table, f);
        while (auto quot = divide_by_atom(q, atom)) {
            add_factor(out, atom, 1);
            q = std::move(*quot);
        }
    }
    while (!q.is_constant()) {
        if (auto a = as_atom(q)) {
            if (!atom_allowed(a->second)) disallowed(a->second);
            add_factor(out, a->second, 1);
            q = MultiPoly(table, a->first);
            break;
        }
        // A power of a linear form lc*(s-c)^d reveals c through its two leading coefficients.
        const int s = lowest_symbol(q);
        auto coeffs = q.coefficients_in(s);
        const std::size_t d = coeffs.size() - 1;
        if (d >= 2 && coeffs[d].is_constant()) {
            MultiPoly c = coeffs[d - 1].scaled(-1 / (coeffs[d].constant_term() * static_cast<long>(d)));
            MultiPoly atom = MultiPoly::symbol(table, s) - c;
            if (auto quot = q.divide_linear(s, c)) {
                if (!atom_allowed(atom)) disallowed(atom);
                add_factor(out, atom, 1);
                q = std::move(*quot);
                continue;
            }
        }
        if (table->policy().any_linear && q.support().size() == 1) {
            for (const auto& [root, mult] : rational_roots(UniPoly::from_multipoly(q, s))) {
                MultiPoly atom = MultiPoly::symbol(table, s) - MultiPoly(table, root);
                for (int m = 0; m < mult; ++m) q = *divide_by_atom(q, atom);
                add_factor(out, atom, mult);
            }
            if (!q.is_constant()) disallowed(q);
            break;
        }
        disallowed(q);
    }
    sort_factors(out);
    return {q.constant_term(), out};
}

Fraction::Fraction(TablePtr table) : num_(std::move(table)) {}
Fraction::Fraction(TablePtr table, const Rational& c) : num_(std::move(table), c) {}
Fraction::Fraction(const MultiPoly& num) : num_(num) {}

Fraction Fraction::from_parts(const MultiPoly& num, const std::vector<std::pair<MultiPoly, int>>& factors) {
    Fraction out(num);
    for (const auto& [poly, power] : factors) {
        if (power == 0) continue;
        if (power < 0) {
            out.num_ *= poly.pow(static_cast<unsigned>(-power));
            continue;
        }
        auto [scale, atoms] = factor_into_atoms(poly);
        Rational s = 1;
        for (int k = 0; k < power; ++k) s *= scale;
        out.num_ = out.num_.scaled(1 / s);
        for (const auto& a : atoms) add_factor(out.den_, a.atom, a.power * power);
    }
    out.canonicalize();
    return out;
}

Fraction Fraction::symbol(TablePtr table, const std::string& name, int power) {
    MultiPoly s = MultiPoly::symbol(table, name);
    if (power >= 0) return Fraction(s.pow(static_cast<unsigned>(power)));
    return from_parts(MultiPoly(table, 1), {{s, -power}});
}

void Fraction::canonicalize() {
    sort_factors(den_);
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& f : den_) {
        while (f.power > 0) {
            auto quot = divide_by_atom(num_, f.atom);
            if (!quot) break;
            num_ = std::move(*quot);
            --f.power;
        }
    }
    sort_factors(den_);
}

MultiPoly Fraction::den_poly() const {
    MultiPoly out(table(), 1);
    for (const auto& f : den_) out *= f.atom.pow(static_cast<unsigned>(f.power));
    return out;
}

Rational Fraction::constant_value() const {
    if (!is_constant()) throw Error(ErrorKind::InvalidArgument, "exactnum", "expression " + to_string() + " is not constant");
    return num_.constant_term();
}

const MultiPoly& Fraction::as_poly() const {
    if (!den_.empty()) throw Error(ErrorKind::InvalidArgument, "exactnum", "expression " + to_string() + " is not a polynomial");
    return num_;
}

Fraction Fraction::operator-() const {
    Fraction r = *this;
    r.num_ = -r.num_;
    return r;
}

Fraction& Fraction::operator+=(const Fraction& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) {
        num_ += rhs.num_;
        den_ = rhs.den_;
        return *this;
    }
    if (den_.empty() && rhs.den_.empty()) {
        num_ += rhs.num_;
        return *this;
    }
    std::vector<DenFactor> common = den_;
    for (const auto& f : rhs.den_) {
        auto it = std::find_if(common.begin(), common.end(), [&](const DenFactor& d) { return d.atom == f.atom; });
        if (it == common.end())
            common.push_back(f);
        else
            it->power = std::max(it->power, f.power);
    }
    auto lift = [&](const MultiPoly& num, const std::vector<DenFactor>& den) {
        MultiPoly out = num;
        for (const auto& c : common) {
            int have = 0;
            for (const auto& d : den)
                if (d.atom == c.atom) have = d.power;
            if (c.power > have) out *= c.atom.pow(static_cast<unsigned>(c.power - have));
        }
        return out;
    };
    num_ = lift(num_, den_) + lift(rhs.num_, rhs.den_);
    den_ = std::move(common);
    canonicalize();
    return *this;
}

Fraction& Fraction::operator-=(const Fraction& rhs) { return *this += -rhs; }

Fraction& Fraction::operator*=(const Fraction& rhs) {
    num_ *= rhs.num_;
    if (num_.is_zero()) {
        den_.clear();
        return *this;
    }
    if (rhs.den_.empty() && den_.empty()) return *this;
    for (const auto& f : rhs.den_) add_factor(den_, f.atom, f.power);
    canonicalize();
    return *this;
}

Fraction& Fraction::operator/=(const Fraction& rhs) { return *this *= rhs.inverse(); }

Fraction Fraction::scaled(const Rational& c) const {
    Fraction r = *this;
    r.num_ = r.num_.scaled(c);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
}

Fraction Fraction::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    Fraction r(table(), 1);
    r.num_ = num_.pow(static_cast<unsigned>(n));
    for (const auto& f : den_) r.den_.push_back({f.atom, f.power * n});
    if (n == 0) r.den_.clear();
    return r;
}

Fraction Fraction::inverse() const {
    auto [scale, atoms] = factor_into_atoms(num_);
    Fraction r(den_poly().scaled(1 / scale));
    r.den_ = std::move(atoms);
    r.canonicalize();
    return r;
}

bool Fraction::operator==(const Fraction& rhs) const {
    if (!(num_ == rhs.num_) || den_.size() != rhs.den_.size()) return false;
    for (std::size_t k = 0; k < den_.size(); ++k)
        if (den_[k].power != rhs.den_[k].power || !(den_[k].atom == rhs.den_[k].atom)) return false;
    return true;
}

Fraction Fraction::derivative(int sym) const {
    Fraction out(num_.derivative(sym));
    out.den_ = den_;
    out.canonicalize();
    for (const auto& f : den_) {
        MultiPoly da = f.atom.derivative(sym);
        if (da.is_zero()) continue;
        Fraction term(num_ * da.scaled(-f.power));
        term.den_ = den_;
        add_factor(term.den_, f.atom, 1);
        term.canonicalize();
        out += term;
    }
    return out;
}

Fraction Fraction::substitute(int sym, const Fraction& value) const {
    auto horner = [&](const MultiPoly& p) {
        auto coeffs = p.coefficients_in(sym);
        Fraction acc(table());
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * value + Fraction(coeffs[k]);
        return acc;
    };
    if (!num_.depends_on(sym) && std::none_of(den_.begin(), den_.end(), [&](const DenFactor& f) { return f.atom.depends_on(sym); }))
        return *this;
    Fraction out = horner(num_);
    for (const auto& f : den_) out /= horner(f.atom).pow(f.power);
    return out;
}

Fraction Fraction::shift(int sym, const Rational& delta) const {
    std::vector<std::pair<MultiPoly, int>> parts;
    for (const auto& f : den_) parts.emplace_back(f.atom.shift(sym, delta), f.power);
    return from_parts(num_.shift(sym, delta), parts);
}

Fraction Fraction::evaluate_partial(const std::map<int, Rational>& values) const {
    std::vector<std::pair<MultiPoly, int>> parts;
    for (const auto& f : den_) {
        MultiPoly a = f.atom.evaluate_partial(values);
        if (a.is_zero())
            throw Error(ErrorKind::Pole, "exactnum", "pole: denominator atom (" + f.atom.to_string() + ") vanishes");
        parts.emplace_back(a, f.power);
    }
    return from_parts(num_.evaluate_partial(values), parts);
}

Rational Fraction::evaluate(const std::map<int, Rational>& values) const {
    Rational den = 1;
    for (const auto& f : den_) {
        Rational v = f.atom.evaluate(values);
        if (sgn(v) == 0)
            throw Error(ErrorKind::Pole, "exactnum", "pole: denominator atom (" + f.atom.to_string() + ") vanishes");
        for (int k = 0; k < f.power; ++k) den *= v;
    }
    return num_.evaluate(values) / den;
}

Rational Fraction::evaluate(const std::map<std::string, Rational>& values) const {
    std::map<int, Rational> idx;
    for (const auto& [name, v] : values) idx[table()->require(name)] = v;
    return evaluate(idx);
}

int Fraction::degree(int sym) const {
    int d = num_.degree(sym);
    for (const auto& f : den_) d -= f.power * f.atom.degree(sym);
    return d;
}

bool Fraction::depends_on(int sym) const {
    if (num_.depends_on(sym)) return true;
    return std::any_of(den_.begin(), den_.end(), [&](const DenFactor& f) { return f.atom.depends_on(sym); });
}

Fraction Fraction::rebase(TablePtr other) const {
    std::vector<std::pair<MultiPoly, int>> parts;
    for (const auto& f : den_) parts.emplace_back(f.atom.rebase(other), f.power);
    return from_parts(num_.rebase(other), parts);
}

std::string Fraction::to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string n = num_.size() == 1 ? num_.to_string() : "(" + num_.to_string() + ")";
    std::string d;
    for (const auto& f : den_) {
        if (!d.empty()) d += "*";
        d += atom_string(f.atom, f.power);
    }
    if (den_.size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace cubalg

namespace cubalg {

std::optional<MultiPoly> sqrt_exact(const MultiPoly& p) {
    const TablePtr& table = p.table();
    if (p.is_zero()) return p;
    MultiPoly root(table);
    MultiPoly rem = p;
    // Leading term of the root squares to the leading term of p; later terms follow
    // from rem = p - root^2 whose leading term must be 2*lead(root)*t.
    const Term& lead = p.leading();
    Exponents e{};
    for (std::size_t k = 0; k < kMaxSymbols; ++k) {
        if (lead.exp[k] % 2 != 0) return std::nullopt;
        e[k] = static_cast<std::uint8_t>(lead.exp[k] / 2);
    }
    auto c = exact_sqrt(lead.coef);
    if (!c) return std::nullopt;
    MultiPoly first = MultiPoly::monomial(table, e, *c);
    root = first;
    rem -= first * first;
    while (!rem.is_zero()) {
        const Term& lt = rem.leading();
        Exponents q{};
        for (std::size_t k = 0; k < kMaxSymbols; ++k) {
            if (lt.exp[k] < e[k]) return std::nullopt;
            q[k] = static_cast<std::uint8_t>(lt.exp[k] - e[k]);
        }
        MultiPoly t = MultiPoly::monomial(table, q, lt.coef / (2 * *c));
        if (!(q < e)) return std::nullopt;  // later root terms must sort below the first one
        rem -= (root.scaled(2) + t) * t;
        root += t;
    }
    return root;
}

std::optional<Fraction> sqrt_exact(const Fraction& f) {
    auto num = sqrt_exact(f.num());
    if (!num) return std::nullopt;
    std::vector<std::pair<MultiPoly, int>> parts;
    for (const auto& d : f.den()) {
        if (d.power % 2 != 0) return std::nullopt;
        parts.emplace_back(d.atom, d.power / 2);
    }
    return Fraction::from_parts(*num, parts);
}

Fraction compose_poly(const MultiPoly& p, const std::map<int, Fraction>& values, const TablePtr& target) {
    Fraction out(target);
    for (const auto& t : p.terms()) {
        Fraction term(target, t.coef);
        for (std::size_t k = 0; k < kMaxSymbols; ++k) {
            if (t.exp[k] == 0) continue;
            auto it = values.find(static_cast<int>(k));
            if (it == values.end())
                throw Error(ErrorKind::UnknownSymbol, "exactnum",
                            "no value supplied for symbol '" + p.table()->name(static_cast<int>(k)) + "'");
            term *= it->second.pow(t.exp[k]);
        }
        out += term;
    }
    return out;
}

}  // namespace cubalg

namespace cubalg {

Fraction compose_fraction(const Fraction& f, const std::map<int, Fraction>& values, const TablePtr& target) {
    Fraction out = compose_poly(f.num(), values, target);
    for (const auto& d : f.den()) out /= compose_poly(d.atom, values, target).pow(d.power);
    return out;
}

}  // namespace cubalg
