#include <random>

#include "cubalg/error.hpp"
#include "cubalg/exactnum/fraction.hpp"
#include "cubalg/exactnum/parse.hpp"
#include "cubalg/exactnum/univariate.hpp"
#include "doctest.h"

using namespace cubalg;

namespace {

TablePtr table() {
    static TablePtr t = SymbolTable::make({"x", "y", "n", "E", "h", "a", "u"}, DenominatorPolicy{.any_linear = true});
    return t;
}

MultiPoly P(const std::string& s) { return parse_poly(s, table()); }
Fraction F(const std::string& s) { return parse_expr(s, table()); }

MultiPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-5, 5), ex(0, 3), count(1, 5);
    MultiPoly out(table());
    for (int k = count(rng); k > 0; --k) {
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(ex(rng));
        e[1] = static_cast<std::uint8_t>(ex(rng));
        e[4] = static_cast<std::uint8_t>(ex(rng) % 2);
        out += MultiPoly::monomial(table(), e, make_rational(coef(rng), 1 + ex(rng)));
    }
    return out;
}

}  // namespace

TEST_CASE("rational canonical form") {
    Rational q = make_rational(6, -4);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK(parse_rational("-10/4") == make_rational(-5, 2));
    CHECK_THROWS_AS(make_rational(1, 0), Error);
    CHECK_THROWS_AS(parse_rational("1/"), Error);
    CHECK(exact_sqrt(make_rational(9, 4)) == make_rational(3, 2));
    CHECK_FALSE(exact_sqrt(Rational(2)).has_value());
}

TEST_CASE("product of half shifts") {
    CHECK(P("n^2 - 1/4") == P("n - 1/2") * P("n + 1/2"));
}

TEST_CASE("monomial fractions cancel") {
    Fraction f = F("h^4/a^4") * F("a^4/h^4");
    CHECK(f.is_constant());
    CHECK(f.constant_value() == 1);
}

TEST_CASE("forward difference of the quadratic A") {
    auto t = SymbolTable::make({"n", "be", "de"}, DenominatorPolicy{.any_linear = true});
    Fraction A = parse_expr("be/2*(n^2 - 1/4 - de/be^2)", t);
    Fraction dA = A.shift(0, 1) - A;
    CHECK(dA == parse_expr("be*(n + 1/2)", t));
}

TEST_CASE("evaluation") {
    Fraction k = F("-16*h^2*E^4 + 32*h^4/a^2*E^3 + 16*h^6/a^4*E^2 - 40*h^8/a^6*E - 3*h^10/a^8");
    CHECK(k.evaluate(std::map<std::string, Rational>{{"E", make_rational(5, 2)}, {"h", 1}, {"a", 1}}) == -128);
    CHECK(MultiPoly(table()).evaluate({{0, 3}}) == 0);
    MultiPoly phi = P("4*x*(3-x)*(x+1)*(x+3)");
    CHECK(phi.evaluate({{0, 1}}) == 64);
}

TEST_CASE("pole reports the vanishing atom") {
    Fraction f = F("1/(x-a)");
    try {
        f.evaluate(std::map<std::string, Rational>{{"x", 1}, {"a", 1}});
        FAIL("expected a pole");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Pole);
        CHECK(std::string(e.what()).find("x - a") != std::string::npos);
    }
}

TEST_CASE("mismatched symbol tables") {
    auto other = SymbolTable::make({"q"});
    CHECK_THROWS_AS(P("x") + MultiPoly::symbol(other, "q"), Error);
}

TEST_CASE("interpolation") {
    auto sq = interpolate({{0, 0}, {1, 1}, {2, 4}}, 2);
    CHECK(sq == UniPoly({0, 0, 1}));
    auto branch = interpolate({{0, make_rational(-1, 2)}, {1, make_rational(-3, 2)}, {2, make_rational(-5, 2)}}, 1);
    CHECK(branch == UniPoly({make_rational(-1, 2), -1}));
    try {
        interpolate({{0, 0}, {1, 1}, {2, 3}}, 1);
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegreeBoundExceeded);
    }
}

TEST_CASE("interpolation reproduces its points") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<Rational, Rational>> pts;
        for (int k = 0; k < 5; ++k) pts.emplace_back(Rational(k * 3 - 4), make_rational(d(rng), 1 + trial % 3));
        UniPoly p = interpolate(pts, 4);
        for (const auto& [x, y] : pts) CHECK(p(x) == y);
    }
}

TEST_CASE("root isolation") {
    auto roots = isolate_real_roots(UniPoly({-2, 0, 1}), 0, 2, make_rational(1, 10000000));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 1);
    CHECK(std::abs(to_double(roots[0].midpoint()) - 1.414214) < 1e-6);

    CHECK(isolate_real_roots(UniPoly::constant(5)).empty());

    // Q5 Phi(0) at E=1 with h=a=1, as a polynomial in u.
    MultiPoly phi0 = P("-4*(u+3/2)*(u-3/2)*(u-1/2)*(u-3/2)");
    auto rr = rational_roots(UniPoly::from_multipoly(phi0, table()->require("u")));
    REQUIRE(rr.size() == 3);
    CHECK(rr[0] == std::pair<Rational, int>{make_rational(-3, 2), 1});
    CHECK(rr[1] == std::pair<Rational, int>{make_rational(1, 2), 1});
    CHECK(rr[2] == std::pair<Rational, int>{make_rational(3, 2), 2});

    auto iv = isolate_real_roots(UniPoly::from_multipoly(phi0, table()->require("u")));
    int total = 0;
    for (const auto& r : iv) total += r.multiplicity;
    CHECK(total == 4);
}

TEST_CASE("sturm counts agree with reported roots") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int trial = 0; trial < 25; ++trial) {
        UniPoly p = UniPoly::constant(1);
        for (int k = 0; k < 4; ++k) p = p * UniPoly({make_rational(d(rng), 1 + trial % 2), 1});
        p = p * UniPoly({1, 0, 1});  // no real roots
        Rational lo = -10, hi = 10;
        auto roots = isolate_real_roots(p, lo, hi);
        UniPoly sf = UniPoly::constant(1);
        for (const auto& [f, m] : square_free_decomposition(p)) sf = sf * f;
        auto sseq = sturm_sequence(sf);
        for (const auto& r : roots) {
            // every interval holds exactly one distinct root of the square-free part
            if (r.exact())
                CHECK(sf(r.lo) == 0);
            else
                CHECK(count_roots(sseq, r.lo, r.hi) == 1);
        }
        int total = 0;
        for (const auto& r : roots) total += r.multiplicity;
        CHECK(total == 4);
    }
}

TEST_CASE("parser") {
    CHECK(P("-32*h^2") == MultiPoly::symbol(table(), "h", 2).scaled(-32));
    Fraction d = F("h^4/a^4");
    CHECK(d.num() == P("h^4"));
    REQUIRE(d.den().size() == 1);
    CHECK(d.den()[0].power == 4);
    try {
        F("2*");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::Syntax);
        CHECK(e.offset() == 2);
    }
    try {
        F("h^");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(F("zz + 1"), ParseError);
    CHECK(F("3/4*x") == F("x*3/4"));
    CHECK(F("  x +  1 ") == F("x+1"));
}

TEST_CASE("denominators outside the declared atoms are rejected") {
    auto w = SymbolTable::make({"x", "y", "h", "a"}, DenominatorPolicy{.atoms = {"x-a", "x+a"}});
    CHECK_NOTHROW(parse_expr("1/(x-a)^2 + 1/(x+a)", w));
    CHECK_NOTHROW(parse_expr("1/(x^2-a^2)", w));
    try {
        parse_expr("1/(x+y)", w);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DisallowedDenominator);
    }
    CHECK_THROWS_AS(parse_expr("1/(x-2*a)", w), Error);
}

TEST_CASE("print and parse round trip") {
    for (const char* s : {"-32*h^2", "h^4/a^4", "-1/(x-a)^2", "(x+1)/(a*(x-a))", "3/4*x", "x^2-1/4", "0"}) {
        Fraction f = F(s);
        CAPTURE(f.to_string());
        CHECK(F(f.to_string()) == f);
    }
    std::mt19937 rng(3);
    for (int k = 0; k < 30; ++k) {
        Fraction f = Fraction::from_parts(random_poly(rng), {{P("x-a"), k % 3}, {P("a"), k % 2}});
        CHECK(F(f.to_string()) == f);
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(42);
    for (int k = 0; k < 40; ++k) {
        MultiPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) {
            auto q = (a * b).divide_exact(b);
            REQUIRE(q.has_value());
            CHECK(*q == a);
        }
    }
}

TEST_CASE("fraction calculus") {
    Fraction f = F("1/(x-a)");
    CHECK(f.derivative(0) == F("-1/(x-a)^2"));
    CHECK(F("x/(x-a)") - F("a/(x-a)") == F("1"));
    int x = table()->require("x");
    CHECK(F("1/(x-a)").substitute(x, F("a+1")) == F("1"));
    CHECK_THROWS_AS(F("1/x").inverse().inverse().evaluate(std::map<std::string, Rational>{{"x", 0}}), Error);
    CHECK_THROWS_AS(Fraction(table()).inverse(), Error);
}

TEST_CASE("imaginary unit reduces eagerly") {
    auto t = SymbolTable::make({"x", "i"}, {}, std::string("i"));
    MultiPoly i = MultiPoly::symbol(t, "i");
    CHECK(i * i == MultiPoly(t, -1));
    CHECK(i.pow(3) == -i);
}
