#include "cubalg/repcheck/fock.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "cubalg/error.hpp"

namespace cubalg {

const char* to_string(Gauge g) { return g == Gauge::TriangularExact ? "triangular-exact" : "symmetric-float"; }

FockData fock_data(const StructureFunction& sf, const Rational& E, const Rational& u, const Rational& h,
                   const Rational& a, int p) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "repcheck", "p must be nonnegative");
    const OscRealization& r = sf.realization;
    const TablePtr& t = r.ctx.table;
    std::map<int, Rational> at{{t->require("E"), E}, {t->require("h"), h}, {t->require("a"), a}};
    auto value = [&](const Fraction& f, int N) {
        at[r.ctx.n] = Rational(N) + u;
        return f.evaluate(at);
    };
    FockData d;
    d.p = p;
    for (int N = 0; N <= p; ++N) {
        d.A.push_back(value(r.A, N));
        d.b.push_back(value(r.b, N));
        d.rho.push_back(value(r.rho, N));
    }
    for (int N = 0; N <= p + 1; ++N) d.phi.push_back(value(sf.phi_n, N));
    return d;
}

FockMatrices<Rational> triangular_gauge(const FockData& d) {
    if (d.phi.size() != static_cast<std::size_t>(d.p + 2) || d.A.size() != static_cast<std::size_t>(d.p + 1))
        throw Error(ErrorKind::InvalidArgument, "repcheck", "inconsistent Fock data");
    if (d.phi.front() != 0) throw Error(ErrorKind::NotTruncated, "repcheck", "Phi(0) != 0: no lowest weight");
    if (d.phi.back() != 0)
        throw Error(ErrorKind::NotTruncated, "repcheck", "Phi(p+1) != 0 for p = " + std::to_string(d.p));
    const std::size_t n = static_cast<std::size_t>(d.p + 1);
    FockMatrices<Rational> m;
    m.p = d.p;
    m.gauge = Gauge::TriangularExact;
    m.N = Matrix<Rational>(n);
    m.b = Matrix<Rational>(n);
    m.b_dagger = Matrix<Rational>(n);
    for (std::size_t i = 0; i < n; ++i) m.N(i, i) = Rational(static_cast<long>(i));
    for (std::size_t i = 1; i < n; ++i) {
        m.b(i - 1, i) = 1;
        m.b_dagger(i, i - 1) = d.phi[i];
    }
    m.A = Matrix<Rational>::diagonal(d.A);
    m.B = Matrix<Rational>::diagonal(d.b) + m.b_dagger * Matrix<Rational>::diagonal(d.rho) + m.b;
    m.C = commutator(m.A, m.B);
    return m;
}

namespace {

// Correctly rounded num and den, so the quotient carries the full 64-bit mantissa.
long double to_long_double(const Rational& r) {
    return std::stold(r.get_num().get_str()) / std::stold(r.get_den().get_str());
}

}  // namespace

FockMatrices<long double> symmetric_gauge(const FockData& d) {
    FockMatrices<Rational> tri = triangular_gauge(d);
    const std::size_t n = static_cast<std::size_t>(d.p + 1);
    std::vector<long double> s(n, 1.0L);
    for (std::size_t i = 1; i < n; ++i) {
        Rational w = d.rho[i - 1] * d.phi[i];
        if (w <= 0)
            throw Error(ErrorKind::NegativeStructureFunction, "repcheck",
                        "rho*Phi <= 0 on the link " + std::to_string(i - 1) + " -> " + std::to_string(i));
        s[i] = s[i - 1] * std::sqrt(to_long_double(w));
    }
    auto conj = [&](const Matrix<Rational>& src) {
        Matrix<long double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (src(i, j) != 0) out(i, j) = to_long_double(src(i, j)) * s[j] / s[i];
        return out;
    };
    FockMatrices<long double> m;
    m.p = d.p;
    m.gauge = Gauge::SymmetricFloat;
    m.N = conj(tri.N);
    m.b = conj(tri.b);
    m.b_dagger = conj(tri.b_dagger);
    m.A = conj(tri.A);
    m.B = conj(tri.B);
    m.C = commutator(m.A, m.B);
    return m;
}

NumericConstants evaluate_constants(const CubicAlgebraSpec& spec, const CasimirExpression& casimir, const Rational& E,
                                    const Rational& h, const Rational& a) {
    const std::map<std::string, Rational> at{{"E", E}, {"h", h}, {"a", a}};
    NumericConstants c{spec.alpha.evaluate(at), spec.beta.evaluate(at), spec.gamma.evaluate(at), spec.delta.evaluate(at),
                       spec.epsilon.evaluate(at), spec.mu.evaluate(at),  spec.nu.evaluate(at),    spec.xi.evaluate(at),
                       spec.zeta.evaluate(at),  spec.k.evaluate(at),   {}};
    for (const auto& f : casimir.coef) c.casimir.push_back(f.evaluate(at));
    return c;
}

namespace {

double as_double(const Rational& r) { return r.get_d(); }

template <class T>
T convert(const Rational& r);
template <>
Rational convert<Rational>(const Rational& r) {
    return r;
}
template <>
long double convert<long double>(const Rational& r) {
    return to_long_double(r);
}

template <class T>
std::vector<Residual> verify(const FockMatrices<T>& m, const NumericConstants& c) {
    using M = Matrix<T>;
    auto k = [](const Rational& r) { return convert<T>(r); };
    const M& A = m.A;
    const M& B = m.B;
    const M& C = m.C;
    const M I = M::identity(A.size());
    const M A2 = A * A, B2 = B * B, AB = anticommutator(A, B);

    // Each relation as (left side, right side, size of the largest summand).
    std::vector<std::tuple<std::string, M, M, double>> rels;
    auto largest = [](std::initializer_list<M> terms) {
        double s = 0;
        for (const auto& t : terms) s = std::max(s, t.max_abs());
        return s;
    };
    const M AC = A * C, CA = C * A, BC = B * C, CB = C * B;
    const M acr[] = {A2.scaled(k(c.alpha)), AB.scaled(k(c.beta)), A.scaled(k(c.gamma)), B.scaled(k(c.delta)),
                     I.scaled(k(c.epsilon))};
    const M bcr[] = {(A2 * A).scaled(k(c.mu)), A2.scaled(k(c.nu)), B2.scaled(k(c.beta)), AB.scaled(k(c.alpha)),
                     A.scaled(k(c.xi)),        B.scaled(k(c.gamma)), I.scaled(k(c.zeta))};
    rels.emplace_back("[A,B] = C", commutator(A, B), C, largest({A * B, B * A}));
    rels.emplace_back("[A,C]", AC - CA, acr[0] + acr[1] + acr[2] + acr[3] + acr[4],
                      largest({AC, CA, acr[0], acr[1], acr[2], acr[3], acr[4]}));
    rels.emplace_back("[B,C]", BC - CB, bcr[0] + bcr[1] - bcr[2] - bcr[3] + bcr[4] - bcr[5] + bcr[6],
                      largest({BC, CB, bcr[0], bcr[1], bcr[2], bcr[3], bcr[4], bcr[5], bcr[6]}));
    const std::vector<M> basis{C * C, anticommutator(A2, B), anticommutator(A, B2), AB, B2, B, A2 * A2, A2 * A, A2, A, I};
    M K(A.size());
    double kscale = std::fabs(as_double(c.k));
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c.casimir[i] != 0) {
            M term = basis[i].scaled(k(c.casimir[i]));
            kscale = std::max(kscale, term.max_abs());
            K += term;
        }
    rels.emplace_back("K = k", K, I.scaled(k(c.k)), kscale);

    M bp = I;
    for (int s = 0; s <= m.p; ++s) bp = bp * m.b;
    rels.emplace_back("b^(p+1) = 0", bp, M(A.size()), 0.0);
    // b^t b is diagonal and b b^t carries the next Phi value (Phi(p+1) = 0).
    M bdb = m.b_dagger * m.b, bbd = m.b * m.b_dagger;
    M shifted(A.size()), diag(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) diag(i, i) = bdb(i, i);
    for (std::size_t i = 0; i + 1 < A.size(); ++i) shifted(i, i) = bdb(i + 1, i + 1);
    rels.emplace_back("b^t b = Phi(N)", bdb, diag, 0.0);
    rels.emplace_back("b b^t = Phi(N+1)", bbd, shifted, 0.0);

    std::vector<Residual> out;
    for (const auto& [name, lhs, rhs, terms] : rels) {
        M r = lhs - rhs;
        double scale = std::max({1.0, terms, lhs.max_abs(), rhs.max_abs()});
        out.push_back({name, m.gauge, r.max_abs(), r.max_abs() / scale, r.is_zero()});
    }
    return out;
}

}  // namespace

std::vector<Residual> verify_relations(const FockMatrices<Rational>& m, const NumericConstants& c) { return verify(m, c); }
std::vector<Residual> verify_relations(const FockMatrices<long double>& m, const NumericConstants& c) { return verify(m, c); }

void require_exact(const std::vector<Residual>& report) {
    for (const auto& r : report)
        if (!r.exact_zero)
            throw Error(ErrorKind::RelationFailure, "repcheck", "relation " + r.relation + " fails (max residual " +
                                                                   std::to_string(r.max_residual) + ")");
}

namespace {

Rational small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    return make_rational(num(rng), den(rng));
}

}  // namespace

RandomCase1 random_case1(std::mt19937_64& rng, int p) {
    const TablePtr& at = algebra_table();
    auto F = [&](const Rational& r) { return Fraction(at, r); };
    for (int attempt = 0; attempt < 100; ++attempt) {
        CubicAlgebraSpec s;
        s.alpha = F(small_rational(rng));
        Rational beta = small_rational(rng);
        if (beta == 0) continue;
        s.beta = F(beta);
        s.gamma = F(small_rational(rng));
        s.delta = F(small_rational(rng));
        s.epsilon = F(small_rational(rng));
        s.mu = F(small_rational(rng));
        s.nu = F(small_rational(rng));
        s.xi = F(small_rational(rng));
        std::uniform_int_distribution<int> j(1, 6);
        Rational u = make_rational(j(rng), 7);

        // Phi is affine in (zeta, k): probe three points and solve Phi(u) = Phi(p+1+u) = 0.
        auto phi_values = [&](const Rational& zeta, const Rational& k) {
            CubicAlgebraSpec t = s;
            t.zeta = F(zeta);
            t.k = F(k);
            StructureFunction sf = derive_structure_function(t);
            const TablePtr& ct = sf.phi_n.table();
            std::map<int, Rational> at0{{ct->require("n"), u}}, at1{{ct->require("n"), u + p + 1}};
            return std::pair<Rational, Rational>{sf.phi_n.evaluate(at0), sf.phi_n.evaluate(at1)};
        };
        auto [f0, f1] = phi_values(0, 0);
        auto [z0, z1] = phi_values(1, 0);
        auto [k0, k1] = phi_values(0, 1);
        Rational a11 = z0 - f0, a12 = k0 - f0, a21 = z1 - f1, a22 = k1 - f1;
        Rational det = a11 * a22 - a12 * a21;
        if (det == 0) continue;
        Rational zeta = (-f0 * a22 + a12 * f1) / det;
        Rational kval = (-a11 * f1 + a21 * f0) / det;
        s.zeta = F(zeta);
        s.k = F(kval);
        RandomCase1 out{s, u, p, derive_structure_function(s)};
        return out;
    }
    throw Error(ErrorKind::InvalidArgument, "repcheck", "could not draw a solvable Case 1 algebra");
}

}  // namespace cubalg
