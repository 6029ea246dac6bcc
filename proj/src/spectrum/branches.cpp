#include "cubalg/spectrum/branches.hpp"

#include <algorithm>
#include <set>

#include "cubalg/error.hpp"
#include "cubalg/exactnum/univariate.hpp"

namespace cubalg {

namespace {

const std::vector<Rational>& param_samples() {
    static const std::vector<Rational> s{Rational(1), Rational(2), Rational(3), Rational(5),
                                         Rational(7), Rational(11), Rational(13), Rational(17)};
    return s;
}

std::optional<int> log2_exact(const Rational& r) {
    if (r <= 0) return std::nullopt;
    for (int e = -24; e <= 24; ++e) {
        Rational p = e >= 0 ? Rational(mpz_class(1) << e) : Rational(mpz_class(1), mpz_class(1) << -e);
        if (p == r) return e;
    }
    return std::nullopt;
}

// Root polynomials in param valid at one fixed assignment of the scale symbols.
std::vector<UniPoly> candidates_at(const MultiPoly& num, int root_sym, int param_sym, const std::map<int, Rational>& scales,
                                   int max_degree) {
    std::vector<std::pair<Rational, std::vector<Rational>>> samples;
    for (const Rational& t : param_samples()) {
        std::map<int, Rational> at = scales;
        at[param_sym] = t;
        UniPoly u = UniPoly::from_multipoly(num.evaluate_partial(at), root_sym);
        if (u.degree() < 1) continue;
        std::vector<Rational> roots;
        for (const auto& [r, m] : rational_roots(u)) roots.push_back(r);
        samples.emplace_back(t, std::move(roots));
    }
    const std::size_t fit = static_cast<std::size_t>(max_degree + 1);
    if (samples.size() < fit + 2) return {};

    std::vector<UniPoly> out;
    std::vector<std::size_t> pick(fit, 0);
    for (std::size_t k = 0; k < fit; ++k)
        if (samples[k].second.empty()) return {};
    while (true) {
        std::vector<std::pair<Rational, Rational>> pts;
        for (std::size_t k = 0; k < fit; ++k) pts.emplace_back(samples[k].first, samples[k].second[pick[k]]);
        UniPoly c = interpolate(pts, max_degree);
        bool ok = true;
        for (std::size_t k = fit; k < samples.size() && ok; ++k) {
            const auto& roots = samples[k].second;
            ok = std::find(roots.begin(), roots.end(), c(samples[k].first)) != roots.end();
        }
        if (ok && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        std::size_t k = 0;
        while (k < fit && ++pick[k] == samples[k].second.size()) pick[k++] = 0;
        if (k == fit) break;
    }
    return out;
}

}  // namespace

BranchSearch find_root_branches(const Fraction& f, int root_sym, int param_sym, const std::vector<int>& scale_syms,
                                int max_degree) {
    const TablePtr& t = f.table();
    const MultiPoly& num = f.num();
    for (int s : num.support())
        if (s != root_sym && s != param_sym && std::find(scale_syms.begin(), scale_syms.end(), s) == scale_syms.end())
            throw Error(ErrorKind::InvalidArgument, "spectrum",
                        "branch search: unexpected symbol '" + t->name(s) + "' in " + f.to_string());
    BranchSearch out;
    out.root_degree = num.degree(root_sym);
    if (out.root_degree < 1) return out;

    std::map<int, Rational> base;
    for (int s : scale_syms) base[s] = 1;
    std::vector<UniPoly> c0 = candidates_at(num, root_sym, param_sym, base, max_degree);
    std::vector<std::vector<UniPoly>> lifted;
    for (int s : scale_syms) {
        std::map<int, Rational> at = base;
        at[s] = 2;
        lifted.push_back(candidates_at(num, root_sym, param_sym, at, max_degree));
    }

    // Exponent of each scale symbol per param power, when the pair (base, scaled) is consistent.
    auto exponents = [](const UniPoly& b, const UniPoly& s) -> std::optional<std::vector<int>> {
        std::vector<int> e(static_cast<std::size_t>(std::max(b.degree(), s.degree()) + 1), 0);
        for (std::size_t j = 0; j < e.size(); ++j) {
            Rational x = b.coeff(static_cast<int>(j)), y = s.coeff(static_cast<int>(j));
            if ((x == 0) != (y == 0)) return std::nullopt;
            if (x == 0) continue;
            auto l = log2_exact(y / x);
            if (!l) return std::nullopt;
            e[j] = *l;
        }
        return e;
    };

    Fraction fnum(num);
    for (const UniPoly& b : c0) {
        // Every combination of consistent partners over the scale symbols.
        std::vector<std::vector<std::vector<int>>> options(scale_syms.size());
        bool feasible = true;
        for (std::size_t k = 0; k < scale_syms.size() && feasible; ++k) {
            for (const UniPoly& s : lifted[k])
                if (auto e = exponents(b, s)) options[k].push_back(*e);
            feasible = !options[k].empty();
        }
        if (!feasible) continue;
        std::vector<std::size_t> pick(scale_syms.size(), 0);
        while (true) {
            Fraction value(t);
            for (int j = 0; j <= b.degree(); ++j) {
                if (b.coeff(j) == 0) continue;
                Fraction term(t, b.coeff(j));
                for (std::size_t k = 0; k < scale_syms.size(); ++k) {
                    int e = options[k][pick[k]][static_cast<std::size_t>(j)];
                    if (e != 0) term *= Fraction(MultiPoly::symbol(t, scale_syms[k])).pow(e);
                }
                if (j > 0) term *= Fraction(MultiPoly::symbol(t, param_sym, static_cast<unsigned>(j)));
                value += term;
            }
            if (fnum.substitute(root_sym, value).is_zero()) {
                bool seen = std::any_of(out.branches.begin(), out.branches.end(),
                                        [&](const RootBranch& r) { return r.value == value; });
                if (!seen) {
                    int mult = 1;
                    Fraction d = fnum.derivative(root_sym);
                    while (!d.is_zero() && d.substitute(root_sym, value).is_zero()) {
                        ++mult;
                        d = d.derivative(root_sym);
                    }
                    out.branches.push_back({value, mult});
                }
            }
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
            if (k == pick.size()) break;
        }
    }
    int total = 0;
    for (const auto& r : out.branches) total += r.multiplicity;
    out.complete = total == out.root_degree;
    return out;
}

}  // namespace cubalg
