#include "cubalg/exactnum/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "cubalg/error.hpp"

namespace cubalg {

namespace {

Rational rational_pow(const Rational& base, unsigned n) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), n);
    return Rational(num, den);
}

// Adds exponents with an overflow check; returns the sign produced by i^2 = -1.
int add_exponents(Exponents& out, const Exponents& a, const Exponents& b, std::size_t n, int imaginary) {
    for (std::size_t k = 0; k < n; ++k) {
        unsigned s = static_cast<unsigned>(a[k]) + b[k];
        if (s > 255) throw Error(ErrorKind::InvalidArgument, "exactnum", "exponent overflow");
        out[k] = static_cast<std::uint8_t>(s);
    }
    for (std::size_t k = n; k < kMaxSymbols; ++k) out[k] = 0;
    if (imaginary >= 0 && out[imaginary] >= 2) {
        unsigned e = out[imaginary];
        out[imaginary] = static_cast<std::uint8_t>(e % 2);
        return ((e / 2) % 2) ? -1 : 1;
    }
    return 1;
}

}  // namespace

std::string monomial_string(const SymbolTable& table, const Exponents& exp) {
    std::string out;
    for (std::size_t k = 0; k < table.size(); ++k) {
        if (exp[k] == 0) continue;
        if (!out.empty()) out += '*';
        out += table.name(static_cast<int>(k));
        if (exp[k] > 1) out += '^' + std::to_string(exp[k]);
    }
    return out;
}

MultiPoly::MultiPoly(TablePtr table) : table_(std::move(table)) {
    if (!table_) throw Error(ErrorKind::InvalidArgument, "exactnum", "null symbol table");
}

MultiPoly::MultiPoly(TablePtr table, const Rational& constant) : MultiPoly(std::move(table)) {
    if (sgn(constant) != 0) terms_.push_back(Term{Exponents{}, constant});
}

MultiPoly MultiPoly::symbol(TablePtr table, int index, unsigned power) {
    if (index < 0 || static_cast<std::size_t>(index) >= table->size())
        throw Error(ErrorKind::UnknownSymbol, "exactnum", "symbol index out of range");
    Exponents e{};
    e[static_cast<std::size_t>(index)] = 1;
    MultiPoly base(table);
    base.terms_.push_back(Term{e, Rational(1)});
    return base.pow(power);
}

MultiPoly MultiPoly::symbol(TablePtr table, const std::string& name, unsigned power) {
    int idx = table->require(name);
    return symbol(std::move(table), idx, power);
}

MultiPoly MultiPoly::monomial(TablePtr table, const Exponents& exp, const Rational& coef) {
    MultiPoly p(std::move(table));
    if (sgn(coef) != 0) {
        p.terms_.push_back(Term{exp, coef});
        p.normalize();
    }
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Exponents{});
}

Rational MultiPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().exp == Exponents{}) return terms_.back().coef;
    return Rational(0);
}

int MultiPoly::degree(int sym) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max<int>(d, t.exp[static_cast<std::size_t>(sym)]);
    return d;
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (const auto& t : terms_) {
        int s = 0;
        for (auto e : t.exp) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::vector<int> MultiPoly::support() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < table_->size(); ++k)
        if (degree(static_cast<int>(k)) > 0) out.push_back(static_cast<int>(k));
    return out;
}

void MultiPoly::check_table(const MultiPoly& other) const {
    if (table_ != other.table_ && !table_->compatible(*other.table_))
        throw Error(ErrorKind::MismatchedSymbols, "exactnum", "operands use different symbol tables");
}

void MultiPoly::normalize() {
    int im = table_->imaginary();
    if (im >= 0) {
        for (auto& t : terms_) {
            unsigned e = t.exp[static_cast<std::size_t>(im)];
            if (e >= 2) {
                t.exp[static_cast<std::size_t>(im)] = static_cast<std::uint8_t>(e % 2);
                if ((e / 2) % 2) t.coef = -t.coef;
            }
        }
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term& l, const Term& r) { return l.exp > r.exp; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exp == t.exp)
            merged.back().coef += t.coef;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& t) { return sgn(t.coef) == 0; }),
                 merged.end());
    terms_ = std::move(merged);
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
    check_table(rhs);
    if (rhs.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + rhs.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < rhs.terms_.size()) {
        if (j == rhs.terms_.size() || (i < terms_.size() && terms_[i].exp > rhs.terms_[j].exp)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || rhs.terms_[j].exp > terms_[i].exp) {
            out.push_back(rhs.terms_[j++]);
        } else {
            Rational c = terms_[i].coef + rhs.terms_[j].coef;
            if (sgn(c) != 0) out.push_back(Term{terms_[i].exp, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
    lhs.check_table(rhs);
    MultiPoly out(lhs.table_);
    if (lhs.terms_.empty() || rhs.terms_.empty()) return out;
    const std::size_t n = lhs.table_->size();
    const int im = lhs.table_->imaginary();
    out.terms_.reserve(lhs.terms_.size() * rhs.terms_.size());
    for (const auto& a : lhs.terms_) {
        for (const auto& b : rhs.terms_) {
            Term t;
            int sign = add_exponents(t.exp, a.exp, b.exp, n, im);
            t.coef = a.coef * b.coef;
            if (sign < 0) t.coef = -t.coef;
            out.terms_.push_back(std::move(t));
        }
    }
    if (lhs.terms_.size() == 1 || rhs.terms_.size() == 1) {
        // Multiplication by a monomial preserves the order unless i^2 was reduced.
        bool sorted = std::is_sorted(out.terms_.begin(), out.terms_.end(),
                                     [](const Term& l, const Term& r) { return l.exp > r.exp; });
        bool distinct = true;
        for (std::size_t k = 1; k < out.terms_.size() && distinct; ++k)
            distinct = out.terms_[k - 1].exp != out.terms_[k].exp;
        if (sorted && distinct) return out;
    }
    out.normalize();
    return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r(table_);
    if (sgn(c) == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

MultiPoly MultiPoly::times_monomial(const Exponents& exp, const Rational& coef) const {
    return *this * monomial(table_, exp, coef);
}

MultiPoly MultiPoly::pow(unsigned n) const {
    MultiPoly result(table_, Rational(1));
    MultiPoly base = *this;
    while (n > 0) {
        if (n & 1u) result *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return result;
}

bool MultiPoly::operator==(const MultiPoly& rhs) const {
    check_table(rhs);
    if (terms_.size() != rhs.terms_.size()) return false;
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (terms_[k].exp != rhs.terms_[k].exp || terms_[k].coef != rhs.terms_[k].coef) return false;
    return true;
}

int MultiPoly::compare(const MultiPoly& rhs) const {
    std::size_t n = std::min(terms_.size(), rhs.terms_.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (terms_[k].exp != rhs.terms_[k].exp) return terms_[k].exp > rhs.terms_[k].exp ? 1 : -1;
        int c = cmp(terms_[k].coef, rhs.terms_[k].coef);
        if (c != 0) return c > 0 ? 1 : -1;
    }
    if (terms_.size() == rhs.terms_.size()) return 0;
    return terms_.size() > rhs.terms_.size() ? 1 : -1;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(int sym) const {
    const auto s = static_cast<std::size_t>(sym);
    std::vector<MultiPoly> out(static_cast<std::size_t>(degree(sym)) + 1, MultiPoly(table_));
    for (const auto& t : terms_) {
        Term c = t;
        c.exp[s] = 0;
        out[t.exp[s]].terms_.push_back(std::move(c));
    }
    for (auto& p : out) p.normalize();
    return out;
}

MultiPoly MultiPoly::from_coefficients(TablePtr table, int sym, const std::vector<MultiPoly>& coeffs) {
    MultiPoly out(table);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        Exponents e{};
        e[static_cast<std::size_t>(sym)] = static_cast<std::uint8_t>(k);
        out += coeffs[k].times_monomial(e, Rational(1));
    }
    return out;
}

MultiPoly MultiPoly::derivative(int sym) const {
    const auto s = static_cast<std::size_t>(sym);
    MultiPoly out(table_);
    for (const auto& t : terms_) {
        if (t.exp[s] == 0) continue;
        Term d = t;
        d.coef *= t.exp[s];
        d.exp[s] -= 1;
        out.terms_.push_back(std::move(d));
    }
    out.normalize();
    return out;
}

MultiPoly MultiPoly::substitute(int sym, const MultiPoly& value) const {
    check_table(value);
    if (!depends_on(sym)) return *this;
    auto coeffs = coefficients_in(sym);
    MultiPoly acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        acc = acc * value;
        acc += coeffs[k];
    }
    return acc;
}

MultiPoly MultiPoly::shift(int sym, const Rational& delta) const {
    MultiPoly value = symbol(table_, sym) + MultiPoly(table_, delta);
    return substitute(sym, value);
}

MultiPoly MultiPoly::permute(const std::vector<int>& map) const {
    MultiPoly out(table_);
    for (const auto& t : terms_) {
        Term r;
        r.coef = t.coef;
        for (std::size_t k = 0; k < table_->size(); ++k) {
            if (t.exp[k] == 0) continue;
            auto dst = static_cast<std::size_t>(map.at(k));
            unsigned s = static_cast<unsigned>(r.exp[dst]) + t.exp[k];
            if (s > 255) throw Error(ErrorKind::InvalidArgument, "exactnum", "exponent overflow");
            r.exp[dst] = static_cast<std::uint8_t>(s);
        }
        out.terms_.push_back(std::move(r));
    }
    out.normalize();
    return out;
}

MultiPoly MultiPoly::evaluate_partial(const std::map<int, Rational>& values) const {
    MultiPoly out(table_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term r = t;
        for (const auto& [sym, value] : values) {
            auto s = static_cast<std::size_t>(sym);
            if (r.exp[s] == 0) continue;
            r.coef *= rational_pow(value, r.exp[s]);
            r.exp[s] = 0;
        }
        out.terms_.push_back(std::move(r));
    }
    out.normalize();
    return out;
}

Rational MultiPoly::evaluate(const std::map<int, Rational>& values) const {
    MultiPoly r = evaluate_partial(values);
    if (!r.is_constant()) {
        auto sup = r.support();
        throw Error(ErrorKind::InvalidArgument, "exactnum",
                    "evaluation leaves symbol '" + table_->name(sup.front()) + "' unassigned");
    }
    return r.constant_term();
}

Exponents MultiPoly::content_monomial() const {
    Exponents e{};
    if (terms_.empty()) return e;
    e = terms_.front().exp;
    for (const auto& t : terms_)
        for (std::size_t k = 0; k < kMaxSymbols; ++k) e[k] = std::min(e[k], t.exp[k]);
    return e;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
    check_table(divisor);
    if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "exactnum", "division by zero polynomial");
    const int im = table_->imaginary();
    if (im >= 0 && divisor.depends_on(im))
        throw Error(ErrorKind::InvalidArgument, "exactnum", "exact division by a polynomial in the imaginary unit");
    MultiPoly rem = *this;
    MultiPoly quot(table_);
    const Term& lead = divisor.leading();
    while (!rem.is_zero()) {
        const Term& lt = rem.leading();
        Exponents q{};
        for (std::size_t k = 0; k < kMaxSymbols; ++k) {
            if (lt.exp[k] < lead.exp[k]) return std::nullopt;
            q[k] = static_cast<std::uint8_t>(lt.exp[k] - lead.exp[k]);
        }
        Rational c = lt.coef / lead.coef;
        MultiPoly step = monomial(table_, q, c);
        quot += step;
        rem -= divisor * step;
    }
    return quot;
}

std::optional<MultiPoly> MultiPoly::divide_linear(int sym, const MultiPoly& c) const {
    check_table(c);
    if (c.depends_on(sym)) throw Error(ErrorKind::InvalidArgument, "exactnum", "linear divisor constant involves its variable");
    if (is_zero()) return *this;
    auto coeffs = coefficients_in(sym);
    const std::size_t d = coeffs.size() - 1;
    if (d == 0) {
        return std::nullopt;  // nonzero and free of sym
    }
    std::vector<MultiPoly> q(d, MultiPoly(table_));
    q[d - 1] = coeffs[d];
    for (std::size_t k = d - 1; k > 0; --k) q[k - 1] = coeffs[k] + c * q[k];
    MultiPoly remainder = coeffs[0] + c * q[0];
    if (!remainder.is_zero()) return std::nullopt;
    return from_coefficients(table_, sym, q);
}

MultiPoly MultiPoly::rebase(TablePtr other) const {
    if (other == table_) return *this;
    std::vector<int> map(table_->size(), -1);
    for (std::size_t k = 0; k < table_->size(); ++k) {
        auto idx = other->index_of(table_->name(static_cast<int>(k)));
        if (idx) map[k] = *idx;
    }
    MultiPoly out(other);
    for (const auto& t : terms_) {
        Term r;
        r.coef = t.coef;
        for (std::size_t k = 0; k < table_->size(); ++k) {
            if (t.exp[k] == 0) continue;
            if (map[k] < 0)
                throw Error(ErrorKind::MismatchedSymbols, "exactnum",
                            "symbol '" + table_->name(static_cast<int>(k)) + "' missing from target table");
            r.exp[static_cast<std::size_t>(map[k])] = t.exp[k];
        }
        out.terms_.push_back(std::move(r));
    }
    out.normalize();
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coef;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono = monomial_string(*table_, t.exp);
        if (mono.empty()) {
            os << cubalg::to_string(c);
        } else if (c == 1) {
            os << mono;
        } else {
            os << cubalg::to_string(c) << '*' << mono;
        }
    }
    return os.str();
}

}  // namespace cubalg
