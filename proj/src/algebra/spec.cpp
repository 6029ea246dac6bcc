#include "cubalg/algebra/spec.hpp"

#include "cubalg/algebra/casimir.hpp"
#include "cubalg/error.hpp"
#include "cubalg/exactnum/parse.hpp"

namespace cubalg {

TablePtr algebra_table() {
    static const TablePtr table = SymbolTable::make({"E", "h", "a"});
    return table;
}

CubicAlgebraSpec::CubicAlgebraSpec()
    : alpha(algebra_table()),
      beta(algebra_table()),
      gamma(algebra_table()),
      delta(algebra_table()),
      epsilon(algebra_table()),
      mu(algebra_table()),
      nu(algebra_table()),
      xi(algebra_table()),
      zeta(algebra_table()),
      k(algebra_table()) {}

Fraction& CubicAlgebraSpec::operator[](std::size_t i) {
    Fraction* fields[] = {&alpha, &beta, &gamma, &delta, &epsilon, &mu, &nu, &xi, &zeta, &k};
    return *fields[i];
}

const Fraction& CubicAlgebraSpec::operator[](std::size_t i) const { return const_cast<CubicAlgebraSpec&>(*this)[i]; }

bool CubicAlgebraSpec::operator==(const CubicAlgebraSpec& rhs) const {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if ((*this)[i] != rhs[i]) return false;
    return true;
}

int CubicAlgebraSpec::realization_case() const {
    if (!beta.is_zero()) return 1;
    if (!delta.is_zero()) return 2;
    return 0;
}

RawAlgebraConstants::RawAlgebraConstants() : rho(algebra_table()), sigma(algebra_table()), eta(algebra_table()) {}

CubicAlgebraSpec jacobi_reduce(const RawAlgebraConstants& raw) {
    const auto& s = raw.base;
    auto check = [](const Fraction& got, const Fraction& want, const char* name, const char* rule) {
        if (got != want)
            throw Error(ErrorKind::JacobiViolation, "algebra",
                        std::string("Jacobi violation: ") + name + " = " + got.to_string() + " but the identity requires " +
                            rule + " = " + want.to_string());
    };
    check(raw.rho, -s.beta, "rho", "-beta");
    check(raw.sigma, -s.alpha, "sigma", "-alpha");
    check(raw.eta, -s.gamma, "eta", "-gamma");
    return s;
}

CubicAlgebraSpec q5_spec() {
    auto F = [](const char* t) { return parse_expr(t, algebra_table()); };
    CubicAlgebraSpec s;
    s.delta = F("h^4/a^4");
    s.mu = F("-32*h^2");
    s.nu = F("-48*h^2*E + 48*h^4/a^2");
    s.xi = F("32*h^4/a^2*E + 8*h^6/a^4");
    s.zeta = F("16*h^2*E^3 - 16*h^4/a^2*E^2 - 4*h^6/a^4*E - 12*h^8/a^6");
    s.k = F("-16*h^2*E^4 + 32*h^4/a^2*E^3 + 16*h^6/a^4*E^2 - 40*h^8/a^6*E - 3*h^10/a^8");
    return s;
}

CasimirExpression::CasimirExpression() {
    coef.assign(11, Fraction(algebra_table()));
}

CasimirExpression casimir_coefficients(const CubicAlgebraSpec& spec) {
    // Case 2 formulas apply when beta vanishes; otherwise the Case 1 derivation
    // (a polynomial identity in the constants) is used, including beta = delta = 0.
    const GenericCasimir& g = generic_casimir(spec.realization_case() == 2 ? 2 : 1);
    return specialize(g, spec);
}

CasimirExpression closed_form_casimir(const CubicAlgebraSpec& s) {
    CasimirExpression out;
    const Fraction& al = s.alpha;
    const Fraction& be = s.beta;
    const Fraction& ga = s.gamma;
    const Fraction& de = s.delta;
    const Fraction& mu = s.mu;
    const Fraction& nu = s.nu;
    auto q = [](long p, long r) { return Fraction(algebra_table(), make_rational(p, r)); };
    out.coef[0] = q(1, 1);
    out.coef[1] = -al;
    out.coef[2] = -be;
    out.coef[3] = al * be - ga;
    out.coef[4] = be * be - de;
    out.coef[5] = be * ga - s.epsilon.scaled(2);
    out.coef[6] = mu * q(1, 2);
    out.coef[7] = (nu + mu * be) * q(2, 3);
    out.coef[8] = -mu * be * be * q(1, 6) + be * nu * q(1, 3) + de * mu * q(1, 2) + al * al + s.xi;
    out.coef[9] = -mu * be * de * q(1, 6) + de * nu * q(1, 3) + al * ga + s.zeta.scaled(2);
    out.coef[10] = q(0, 1);
    return out;
}

}  // namespace cubalg
