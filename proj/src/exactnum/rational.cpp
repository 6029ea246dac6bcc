#include "cubalg/exactnum/rational.hpp"

#include <cmath>

#include "cubalg/error.hpp"

namespace cubalg {

Rational make_rational(long num, long den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "exactnum", "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "exactnum", "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    auto bad = [&] { return Error(ErrorKind::Syntax, "exactnum", "malformed rational '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    std::size_t slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    Integer zn(n, 10);
    Integer zd(std::string(den), 10);
    return make_rational(zn, zd);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    Integer n = sqrt(q.get_num());
    Integer d = sqrt(q.get_den());
    return make_rational(n, d);
}

Rational approximate(double value, long max_den) {
    // Continued-fraction convergents, stopping before the denominator bound.
    double x = value;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(x);
        Integer ai(a);
        Integer h2 = ai * h1 + h0;
        Integer k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double frac = x - a;
        if (std::fabs(frac) < 1e-15) break;
        x = 1.0 / frac;
    }
    if (k1 == 0) return Rational(0);
    return make_rational(h1, k1);
}

}  // namespace cubalg
