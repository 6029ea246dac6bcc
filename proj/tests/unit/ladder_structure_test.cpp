#include "cubalg/algebra/casimir.hpp"
#include "cubalg/error.hpp"
#include "cubalg/exactnum/parse.hpp"
#include "cubalg/ladder/structure.hpp"
#include "doctest.h"

using namespace cubalg;

namespace {

Fraction P(const std::string& s) { return parse_expr(s, phi_table()); }

}  // namespace

TEST_CASE("q5 structure function") {
    StructureFunction sf = derive_structure_function(q5_spec());
    CHECK(sf.realization.case_id == 2);
    CHECK(sf.degree == 4);
    Fraction expected = P("-4*h^6/a^4 * (x+u+a^2*E/h^2+1/2)*(x+u-a^2*E/h^2-1/2)*(x+u+a^2*E/h^2-3/2)*(x+u+a^2*E/h^2-5/2)");
    CHECK(sf.phi == expected);
}

namespace {

Fraction A(const std::string& s) { return parse_expr(s, algebra_table()); }

CubicAlgebraSpec case1_spec() {
    CubicAlgebraSpec s;
    s.alpha = A("1/2");
    s.beta = A("2");
    s.gamma = A("-1");
    s.delta = A("3");
    s.epsilon = A("1/4");
    s.mu = A("1");
    s.nu = A("-2");
    s.xi = A("5");
    s.zeta = A("1/3");
    s.k = A("7");
    return s;
}

}  // namespace

TEST_CASE("realization satisfies the matching equations") {
    for (const CubicAlgebraSpec& s : {q5_spec(), case1_spec()}) {
        OscRealization r = derive_realization(s);
        auto res = realization_residuals(r, constants_from_spec(s, r.ctx));
        CHECK(res[0].is_zero());
        CHECK(res[1].is_zero());
    }
}

TEST_CASE("Case 1 b matches the closed form") {
    CubicAlgebraSpec s = case1_spec();
    OscRealization r = derive_realization(s);
    // alpha A^2 + gamma A + epsilon over -beta^2 (n^2 - 1/4)
    Fraction n = r.ctx.n_symbol();
    Fraction Aexp = parse_expr("(n^2 - 1/4 - 3/4)", r.ctx.table);
    CHECK(r.A == Aexp);
    Fraction b = parse_expr("-(1/2*(n^2-1)^2 - (n^2-1) + 1/4)/(4*(n^2-1/4))", r.ctx.table);
    CHECK(r.b == b);
    (void)n;
}

TEST_CASE("Case 1 structure function is a polynomial of degree at most 10") {
    StructureFunction sf = derive_structure_function(case1_spec());
    CHECK(sf.realization.case_id == 1);
    CHECK(sf.phi_n.is_polynomial());
    CHECK(sf.degree <= 10);
    CHECK(sf.degree >= 4);
}

TEST_CASE("the link weight does not depend on rho") {
    CubicAlgebraSpec s = q5_spec();
    StructureFunction one = derive_structure_function(s);
    StructureFunction two = derive_structure_function(s, std::nullopt, parse_expr("2", spec_context().table));
    CHECK(two.phi_n.scaled(2) == one.phi_n);
}

TEST_CASE("Case 1 with rho = 1 has a rational Phi") {
    CHECK_THROWS_AS_MESSAGE(derive_structure_function(case1_spec(), std::nullopt, parse_expr("1", spec_context().table)),
                            Error, "NonPolynomialPhi expected");
    try {
        derive_structure_function(case1_spec(), std::nullopt, parse_expr("1", spec_context().table));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPolynomialPhi);
    }
}

TEST_CASE("structure function errors") {
    CubicAlgebraSpec s = q5_spec();
    CasimirExpression bad = casimir_coefficients(s);
    bad.coef[9] += A("1");
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    CHECK(kind_of([&] { derive_structure_function(s, bad); }) == ErrorKind::ShiftInconsistency);
    CasimirExpression zero;
    CHECK(kind_of([&] { derive_structure_function(s, zero); }) == ErrorKind::SingularSystem);
    CubicAlgebraSpec flat;
    CHECK(kind_of([&] { derive_structure_function(flat); }) == ErrorKind::UnsupportedCase);
    CubicAlgebraSpec odd = s;
    odd.delta = A("2*h^4");
    CHECK(kind_of([&] { derive_realization(odd); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { spec_context().phi_symbol(3); }) == ErrorKind::ShiftBoundExceeded);
}
