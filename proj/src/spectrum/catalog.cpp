#include "cubalg/spectrum/catalog.hpp"

#include <algorithm>

#include "cubalg/error.hpp"

namespace cubalg {

namespace {

struct Syms {
    int x, u, E, h, a, p;
};

Syms syms() {
    const TablePtr& t = phi_table();
    return {t->require("x"), t->require("u"), t->require("E"), t->require("h"), t->require("a"), t->require("p")};
}

Fraction sym(int s) { return Fraction(MultiPoly::symbol(phi_table(), s)); }

}  // namespace

bool SpectrumFamily::unitary_for_all_p() const {
    bool any = false;
    for (const auto& [p, v] : unitarity) {
        if (p == 0) continue;
        any = true;
        if (!v.pass) return false;
    }
    return any;
}

std::vector<int> SpectrumFamily::passing_p() const {
    std::vector<int> out;
    for (const auto& [p, v] : unitarity)
        if (p > 0 && v.pass) out.push_back(p);
    return out;
}

UBranches u_branches(const StructureFunction& sf) { return u_branches(sf.phi); }

UBranches u_branches(const Fraction& phi) {
    const Syms s = syms();
    Fraction phi0 = phi_at(phi, Rational(0));
    BranchSearch found = find_root_branches(phi0, s.u, s.E, {s.h, s.a}, 2);
    UBranches out;
    for (const auto& b : found.branches) out.branches.push_back(b.value);
    out.fallback = !found.complete;
    std::sort(out.branches.begin(), out.branches.end(),
              [](const Fraction& l, const Fraction& r) { return l.to_string() < r.to_string(); });
    return out;
}

Rational energy_at(const SpectrumFamily& family, int p, const ScalePoint& at) {
    const Syms s = syms();
    return family.energy.evaluate(std::map<int, Rational>{{s.p, Rational(p)}, {s.h, at.h}, {s.a, at.a}});
}

namespace {

Verdict verdict_at(const SpectrumFamily& family, int p, const ScalePoint& at) {
    const Syms s = syms();
    for (int x = 1; x <= p; ++x) {
        Rational val = family.phi.evaluate(
            std::map<int, Rational>{{s.x, Rational(x)}, {s.p, Rational(p)}, {s.h, at.h}, {s.a, at.a}});
        if (val <= 0) return {false, x};
    }
    return {};
}

}  // namespace

std::map<int, Verdict> unitarity_filter(const SpectrumFamily& family, int p_max, const ScalePoint& at) {
    std::map<int, Verdict> out;
    for (int p = 0; p <= p_max; ++p) out[p] = verdict_at(family, p, at);
    return out;
}

void unitarity_filter_all_serial(std::vector<SpectrumFamily>& families, int p_max, const ScalePoint& at) {
    for (auto& f : families) f.unitarity = unitarity_filter(f, p_max, at);
}

void unitarity_filter_all(std::vector<SpectrumFamily>& families, int p_max, const ScalePoint& at) {
    const int nf = static_cast<int>(families.size());
    const int np = p_max + 1;
    std::vector<Verdict> flat(static_cast<std::size_t>(nf * np));
#pragma omp parallel for schedule(dynamic, 4)
    for (int k = 0; k < nf * np; ++k)
        flat[static_cast<std::size_t>(k)] = verdict_at(families[static_cast<std::size_t>(k / np)], k % np, at);
    for (int f = 0; f < nf; ++f) {
        auto& m = families[static_cast<std::size_t>(f)].unitarity;
        m.clear();
        for (int p = 0; p < np; ++p) m[p] = flat[static_cast<std::size_t>(f * np + p)];
    }
}

FamilySearch energy_families(const StructureFunction& sf, const Fraction& u_branch, int p_max, const ScalePoint& at) {
    const Syms s = syms();
    Fraction phi_u = sf.phi.substitute(s.u, u_branch);
    Fraction top = phi_u.substitute(s.x, sym(s.p) + Fraction(phi_table(), 1));
    if (!top.depends_on(s.E))
        throw Error(ErrorKind::RelationFailure, "spectrum", "no family: Phi(p+1) does not depend on E for u = " + u_branch.to_string());

    BranchSearch found = find_root_branches(top, s.E, s.p, {s.h, s.a}, 2);
    FamilySearch out;
    for (const auto& e : found.branches) {
        SpectrumFamily fam{u_branch, e.value, phi_u.substitute(s.E, e.value), {}, Fraction(phi_table()), {}};
        if (!phi_at(fam.phi, Rational(0)).is_zero())
            throw Error(ErrorKind::RelationFailure, "spectrum", "Phi(0) does not vanish on the branch");
        BranchSearch roots = find_root_branches(fam.phi, s.x, s.p, {s.h, s.a}, 1);
        fam.phi_roots = roots.branches;
        std::sort(fam.phi_roots.begin(), fam.phi_roots.end(),
                  [](const RootBranch& l, const RootBranch& r) { return l.value.to_string() < r.value.to_string(); });
        Fraction rest = fam.phi;
        for (const auto& r : fam.phi_roots) rest /= (sym(s.x) - r.value).pow(r.multiplicity);
        fam.phi_scale = rest;
        out.families.push_back(std::move(fam));
    }

    if (!found.complete) {
        // Divide out the closed-form factors and solve what is left numerically per p.
        Fraction residual = top;
        for (const auto& e : found.branches) residual /= (sym(s.E) - e.value).pow(e.multiplicity);
        FallbackFamily fb{u_branch, residual, {}};
        for (int p = 0; p <= p_max; ++p) {
            MultiPoly m = residual.num().evaluate_partial({{s.p, Rational(p)}, {s.h, at.h}, {s.a, at.a}});
            UniPoly uni = UniPoly::from_multipoly(m, s.E);
            if (uni.degree() < 1) continue;
            for (const auto& r : isolate_real_roots(uni)) fb.energies[p].push_back(r.midpoint().get_d());
        }
        out.fallback.push_back(std::move(fb));
    }
    return out;
}

Catalog enumerate_catalog(const CubicAlgebraSpec& spec, int p_max, const ScalePoint& at) {
    if (p_max < 0) throw Error(ErrorKind::InvalidArgument, "spectrum", "p_max must be nonnegative");
    if (at.h <= 0 || at.a <= 0) throw Error(ErrorKind::InvalidArgument, "spectrum", "h and a must be positive");
    Catalog c{derive_structure_function(spec), {}, {}, {}, p_max, at};
    c.u = u_branches(c.structure);
    std::map<std::string, SpectrumFamily> unique;
    for (const Fraction& u : c.u.branches) {
        FamilySearch fs;
        try {
            fs = energy_families(c.structure, u, p_max, at);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::RelationFailure) throw;
            continue;
        }
        for (auto& f : fs.families) unique.emplace(f.key(), std::move(f));
        for (auto& f : fs.fallback) c.fallback.push_back(std::move(f));
    }
    for (auto& [k, f] : unique) c.families.push_back(std::move(f));
    unitarity_filter_all(c.families, p_max, at);
    std::stable_sort(c.families.begin(), c.families.end(), [&](const SpectrumFamily& l, const SpectrumFamily& r) {
        return energy_at(l, 1, at) < energy_at(r, 1, at);
    });
    return c;
}

}  // namespace cubalg
