#include "cubalg/exactnum/univariate.hpp"

#include <algorithm>
#include <functional>

#include "cubalg/error.hpp"

namespace cubalg {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(k)];
}

Rational UniPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
}

double UniPoly::operator()(double x) const {
    double acc = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].get_d();
    return acc;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k < a.c_.size()) out[k] += a.c_[k];
        if (k < b.c_.size()) out[k] += b.c_[k];
    }
    return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(out));
}

UniPoly UniPoly::scaled(const Rational& c) const {
    UniPoly r = *this;
    for (auto& v : r.c_) v *= c;
    r.trim();
    return r;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * static_cast<long>(k);
    return UniPoly(std::move(out));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(1 / leading());
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return *this;
    Integer l = 1;
    for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Rational> out;
    Integer g = 0;
    for (const auto& c : c_) {
        Rational v = c * l;
        out.push_back(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    if (sgn(out.back()) < 0) g = -g;
    for (auto& v : out) v /= g;
    return UniPoly(std::move(out));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "exactnum", "polynomial division by zero");
    std::vector<Rational> rem = c_;
    const int dd = divisor.degree();
    if (degree() < dd) return {UniPoly(), *this};
    std::vector<Rational> q(static_cast<std::size_t>(degree() - dd + 1));
    for (int k = degree(); k >= dd; --k) {
        Rational coef = rem[static_cast<std::size_t>(k)] / divisor.leading();
        q[static_cast<std::size_t>(k - dd)] = coef;
        if (sgn(coef) == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= coef * divisor.c_[static_cast<std::size_t>(j)];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::from_multipoly(const MultiPoly& p, int sym) {
    std::vector<Rational> out(static_cast<std::size_t>(p.degree(sym)) + 1);
    for (const auto& t : p.terms()) {
        for (std::size_t k = 0; k < kMaxSymbols; ++k)
            if (static_cast<int>(k) != sym && t.exp[k] != 0)
                throw Error(ErrorKind::InvalidArgument, "exactnum",
                            "polynomial is not univariate in '" + p.table()->name(sym) + "'");
        out[t.exp[static_cast<std::size_t>(sym)]] += t.coef;
    }
    return UniPoly(std::move(out));
}

MultiPoly UniPoly::to_multipoly(TablePtr table, int sym) const {
    MultiPoly out(table);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        Exponents e{};
        e[static_cast<std::size_t>(sym)] = static_cast<std::uint8_t>(k);
        out += MultiPoly::monomial(table, e, c_[k]);
    }
    return out;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        auto r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::vector<std::pair<UniPoly, int>> square_free_decomposition(const UniPoly& p) {
    std::vector<std::pair<UniPoly, int>> out;
    if (p.degree() <= 0) return out;
    UniPoly f = p.monic();
    UniPoly fp = f.derivative();
    UniPoly a = gcd(f, fp);
    UniPoly b = f.divmod(a).first;
    UniPoly c = fp.divmod(a).first;
    UniPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        UniPoly g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
    std::vector<UniPoly> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    UniPoly d = p.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d);
    while (true) {
        auto r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

int sign_variations(const std::vector<UniPoly>& seq, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& q : seq) {
        int s = sgn(q(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int count_roots(const std::vector<UniPoly>& seq, const Rational& lo, const Rational& hi) {
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

Rational default_root_width() { return make_rational(1, 1000000000); }

Rational root_bound(const UniPoly& p) {
    Rational m = 0;
    if (p.degree() <= 0) return Rational(1);
    for (int k = 0; k < p.degree(); ++k) {
        Rational v = abs(p.coeff(k) / p.leading());
        if (v > m) m = v;
    }
    return m + 1;
}

namespace {

void isolate_square_free(const UniPoly& f, const Rational& lo, const Rational& hi, const Rational& width, int mult,
                         std::vector<RootInterval>& out) {
    auto seq = sturm_sequence(f);
    if (sgn(f(lo)) == 0) out.push_back({lo, lo, mult});
    std::function<void(const Rational&, const Rational&, int)> rec = [&](const Rational& a, const Rational& b, int cnt) {
        if (cnt == 0) return;
        if (cnt == 1) {
            if (sgn(f(b)) == 0) {
                out.push_back({b, b, mult});
                return;
            }
            if (b - a <= width) {
                out.push_back({a, b, mult});
                return;
            }
        }
        Rational mid = (a + b) / 2;
        int left = count_roots(seq, a, mid);
        rec(a, mid, left);
        rec(mid, b, cnt - left);
    };
    rec(lo, hi, count_roots(seq, lo, hi));
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& lo, const Rational& hi,
                                             const Rational& width) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "exactnum", "root isolation of the zero polynomial");
    if (lo > hi) throw Error(ErrorKind::InvalidArgument, "exactnum", "empty root interval");
    std::vector<RootInterval> out;
    for (const auto& [factor, mult] : square_free_decomposition(p))
        isolate_square_free(factor, lo, hi, width, mult, out);
    std::sort(out.begin(), out.end(), [](const RootInterval& l, const RootInterval& r) { return l.lo < r.lo; });
    return out;
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& width) {
    if (p.degree() <= 0) {
        if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "exactnum", "root isolation of the zero polynomial");
        return {};
    }
    Rational b = root_bound(p);
    return isolate_real_roots(p, -b, b, width);
}

std::vector<std::pair<Rational, int>> rational_roots(const UniPoly& p) {
    std::vector<std::pair<Rational, int>> out;
    if (p.degree() <= 0) return out;
    for (const auto& [factor, mult] : square_free_decomposition(p)) {
        UniPoly f = factor.primitive();
        Rational lc = f.leading();  // integer after primitive()
        // A rational root k/q has q | lc, so distinct candidates are spaced by at least 1/lc.
        Rational width = 1 / (2 * lc);
        Rational b = root_bound(f);
        for (const auto& iv : isolate_real_roots(f, -b, b, width)) {
            if (iv.exact()) {
                out.emplace_back(iv.lo, mult);
                continue;
            }
            Rational lo_scaled = iv.lo * lc;
            Rational hi_scaled = iv.hi * lc;
            Integer k = lo_scaled.get_num() / lo_scaled.get_den();  // truncation toward zero
            if (Rational(k) > lo_scaled) k -= 1;
            for (; Rational(k) <= hi_scaled; ++k) {
                Rational cand = make_rational(k, lc.get_num());
                if (cand > iv.lo && cand <= iv.hi && sgn(f(cand)) == 0) {
                    out.emplace_back(cand, mult);
                    break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    return out;
}

UniPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree_bound) {
    if (degree_bound < 0) throw Error(ErrorKind::InvalidArgument, "exactnum", "negative degree bound");
    const std::size_t need = static_cast<std::size_t>(degree_bound) + 1;
    if (points.size() < need)
        throw Error(ErrorKind::InvalidArgument, "exactnum", "interpolation needs at least degree_bound+1 points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw Error(ErrorKind::InvalidArgument, "exactnum", "interpolation abscissae must be distinct");
    // Newton divided differences on the first degree_bound+1 points.
    std::vector<Rational> dd(need);
    for (std::size_t i = 0; i < need; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < need; ++level)
        for (std::size_t i = need - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);
            if (i == level) break;
        }
    UniPoly result = UniPoly::constant(dd[need - 1]);
    for (std::size_t k = need - 1; k-- > 0;) {
        result = result * UniPoly({-points[k].first, Rational(1)}) + UniPoly::constant(dd[k]);
    }
    for (std::size_t i = need; i < points.size(); ++i)
        if (result(points[i].first) != points[i].second)
            throw Error(ErrorKind::DegreeBoundExceeded, "exactnum",
                        "degree bound exceeded: point " + std::to_string(i) + " is inconsistent");
    return result;
}

}  // namespace cubalg
