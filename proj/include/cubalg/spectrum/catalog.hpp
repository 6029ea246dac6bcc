#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubalg/algebra/spec.hpp"
#include "cubalg/exactnum/univariate.hpp"
#include "cubalg/ladder/structure.hpp"
#include "cubalg/spectrum/branches.hpp"

namespace cubalg {

struct UBranches {
    std::vector<Fraction> branches;  // u(E, h, a) over phi_table()
    bool fallback = false;           // some roots of Phi(0) are not polynomial in E
};

struct Verdict {
    bool pass = true;
    int first_failing_x = 0;  // 0 when pass
    bool operator==(const Verdict& o) const { return pass == o.pass && first_failing_x == o.first_failing_x; }
};

/// Point at which h and a are fixed for sign decisions; both must be positive.
struct ScalePoint {
    Rational h{1};
    Rational a{1};
};

struct SpectrumFamily {
    Fraction u_branch;  // in E, h, a
    Fraction energy;    // E(p) in p, h, a
    Fraction phi;       // Phi(x) with u and E substituted: x, p, h, a
    std::vector<RootBranch> phi_roots;  // x = r(p) with multiplicity
    Fraction phi_scale;                 // Phi / prod(x - r)^m, free of x
    std::map<int, Verdict> unitarity;   // p -> verdict; p = 0 passes vacuously

    /// Canonical identity: energy and Phi as strings.
    std::string key() const { return energy.to_string() + "|" + phi.to_string(); }
    bool unitary_for_all_p() const;
    std::vector<int> passing_p() const;
};

/// Roots of the residual Phi(p+1) factor that has no closed form, per p (numeric, at the scale point).
struct FallbackFamily {
    Fraction u_branch;
    Fraction residual;  // polynomial in E, p, h, a
    std::map<int, std::vector<double>> energies;
};

UBranches u_branches(const StructureFunction& sf);
/// Same, for Phi(x; u, E) given directly over phi_table().
UBranches u_branches(const Fraction& phi);

struct FamilySearch {
    std::vector<SpectrumFamily> families;
    std::vector<FallbackFamily> fallback;
};
/// Families E(p) from Phi(p+1) = 0 with Phi(0) = 0 already imposed by the branch.
/// Throws Error(RelationFailure) with "no family" when Phi(p+1) does not depend on E.
FamilySearch energy_families(const StructureFunction& sf, const Fraction& u_branch, int p_max = 0,
                             const ScalePoint& at = {});

/// Verdicts for p = 0..p_max: pass iff Phi(x) > 0 exactly for x = 1..p.
std::map<int, Verdict> unitarity_filter(const SpectrumFamily& family, int p_max, const ScalePoint& at = {});

/// Fills every family's verdicts, parallel over (family, p) pairs.
void unitarity_filter_all(std::vector<SpectrumFamily>& families, int p_max, const ScalePoint& at = {});
/// Single-threaded reference for unitarity_filter_all.
void unitarity_filter_all_serial(std::vector<SpectrumFamily>& families, int p_max, const ScalePoint& at = {});

struct Catalog {
    StructureFunction structure;
    UBranches u;
    std::vector<SpectrumFamily> families;  // deduplicated, sorted by energy at p = 1
    std::vector<FallbackFamily> fallback;
    int p_max = 0;
    ScalePoint at;
};

Catalog enumerate_catalog(const CubicAlgebraSpec& spec, int p_max, const ScalePoint& at = {});

/// Exact value of E(p) at the scale point.
Rational energy_at(const SpectrumFamily& family, int p, const ScalePoint& at = {});

}  // namespace cubalg
