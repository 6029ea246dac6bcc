#include <algorithm>

#include "cubalg/error.hpp"
#include "cubalg/exactnum/parse.hpp"
#include "cubalg/spectrum/catalog.hpp"
#include "doctest.h"

using namespace cubalg;

namespace {

Fraction P(const std::string& s) { return parse_expr(s, phi_table()); }

const Catalog& q5_catalog() {
    static const Catalog c = enumerate_catalog(q5_spec(), 50);
    return c;
}

const SpectrumFamily& family(const std::string& energy) {
    const auto& fs = q5_catalog().families;
    auto it = std::find_if(fs.begin(), fs.end(), [&](const SpectrumFamily& f) { return f.energy == P(energy); });
    REQUIRE(it != fs.end());
    return *it;
}

}  // namespace

TEST_CASE("q5 u branches") {
    UBranches u = q5_catalog().u;
    CHECK_FALSE(u.fallback);
    REQUIRE(u.branches.size() == 4);
    for (const char* want : {"-a^2*E/h^2 - 1/2", "a^2*E/h^2 + 1/2", "-a^2*E/h^2 + 3/2", "-a^2*E/h^2 + 5/2"})
        CHECK(std::count(u.branches.begin(), u.branches.end(), P(want)) == 1);
}

TEST_CASE("double root of Phi(0) at E = 1") {
    // h = a = 1, E = 1: roots -3/2, 1/2, 3/2, 3/2 in u
    Fraction phi0 = phi_at(q5_catalog().structure.phi, Rational(0));
    const TablePtr& t = phi_table();
    MultiPoly m = phi0.num().evaluate_partial({{t->require("E"), Rational(1)}, {t->require("h"), Rational(1)}, {t->require("a"), Rational(1)}});
    auto roots = rational_roots(UniPoly::from_multipoly(m, t->require("u")));
    REQUIRE(roots.size() == 3);
    CHECK(roots[2] == std::make_pair(make_rational(3, 2), 2));
}

TEST_CASE("non-polynomial branch falls back") {
    UBranches u = u_branches(P("u^2 - E^3"));
    CHECK(u.branches.empty());
    CHECK(u.fallback);
    UBranches mixed = u_branches(P("(u - E)*(u^2 - E^3)"));
    REQUIRE(mixed.branches.size() == 1);
    CHECK(mixed.branches[0] == P("E"));
    CHECK(mixed.fallback);
}

TEST_CASE("q5 families") {
    CHECK(q5_catalog().families.size() == 6);
    CHECK(q5_catalog().fallback.empty());
    struct Expect {
        const char* energy;
        const char* phi;
    };
    const Expect all[] = {
        {"h^2*p/(2*a^2)", "4*h^6/a^4*x*(p+1-x)*(x-2)*(x-3)"},
        {"-h^2*(p+2)/(2*a^2)", "4*h^6/a^4*x*(p+1-x)*(p+3-x)*(p+4-x)"},
        {"-h^2*p/(2*a^2)", "4*h^6/a^4*x*(p+1-x)*(p-1-x)*(p+2-x)"},
        {"-h^2*(p-1)/(2*a^2)", "4*h^6/a^4*x*(p+1-x)*(p-2-x)*(p-x)"},
        {"h^2*(p+2)/(2*a^2)", "4*h^6/a^4*x*(p+1-x)*(x-1)*(x+2)"},
        {"h^2*(p+3)/(2*a^2)", "4*h^6/a^4*x*(p+1-x)*(x+1)*(x+3)"},
    };
    for (const auto& e : all) {
        CAPTURE(e.energy);
        const SpectrumFamily& f = family(e.energy);
        CHECK(f.phi == P(e.phi));
        CHECK(f.phi_scale == P("-4*h^6/a^4"));
        int total = 0;
        for (const auto& r : f.phi_roots) total += r.multiplicity;
        CHECK(total == 4);
    }
}

TEST_CASE("unitarity verdicts") {
    const SpectrumFamily& top = family("h^2*(p+3)/(2*a^2)");
    CHECK(top.unitarity.at(4).pass);
    CHECK(top.unitarity.at(0).pass);
    CHECK(top.unitary_for_all_p());
    const SpectrumFamily& first = family("h^2*p/(2*a^2)");
    CHECK(first.unitarity.at(3) == Verdict{false, 2});
    CHECK(first.unitarity.at(1).pass);
    const SpectrumFamily& third = family("h^2*(p+2)/(2*a^2)");
    for (int p = 1; p <= 50; ++p) CHECK(third.unitarity.at(p) == Verdict{false, 1});
    CHECK(family("-h^2*(p+2)/(2*a^2)").unitary_for_all_p());
    const SpectrumFamily& neg = family("-h^2*p/(2*a^2)");
    CHECK(neg.passing_p().empty());
    CHECK(energy_at(top, 0) == make_rational(3, 2));
}

TEST_CASE("parallel and serial unitarity agree") {
    std::vector<SpectrumFamily> a = q5_catalog().families, b = q5_catalog().families;
    unitarity_filter_all(a, 20);
    unitarity_filter_all_serial(b, 20);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].unitarity == b[i].unitarity);
}

TEST_CASE("verdicts agree with direct evaluation") {
    const TablePtr& t = phi_table();
    for (const auto& f : q5_catalog().families)
        for (int p = 1; p <= 12; ++p) {
            bool pass = true;
            for (int x = 1; x <= p; ++x)
                pass = pass && f.phi.evaluate(std::map<std::string, Rational>{{"x", Rational(x)}, {"p", Rational(p)}, {"h", Rational(1)}, {"a", Rational(1)}}) > 0;
            CHECK(pass == f.unitarity.at(p).pass);
        }
    for (const auto& f : q5_catalog().families) {
        CHECK(phi_at(f.phi, Rational(0)).is_zero());
        CHECK(f.phi.substitute(t->require("x"), P("p + 1")).is_zero());
    }
}

TEST_CASE("no family without E dependence") {
    StructureFunction sf = q5_catalog().structure;
    sf.phi = P("x*(x+u)");
    CHECK_THROWS_AS(energy_families(sf, P("0")), Error);
}

TEST_CASE("branch search with a quadratic parameter dependence") {
    const TablePtr& t = phi_table();
    Fraction f = P("(E - h^2*p^2/a^2)*(E + 3*p + 1)");
    BranchSearch s = find_root_branches(f, t->require("E"), t->require("p"), {t->require("h"), t->require("a")}, 2);
    CHECK(s.complete);
    REQUIRE(s.branches.size() == 2);
}
