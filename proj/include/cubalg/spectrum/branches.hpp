#pragma once

#include <utility>
#include <vector>

#include "cubalg/exactnum/fraction.hpp"

namespace cubalg {

/// A verified root r(param, scales) of f, polynomial in param with
/// coefficients of the form q * prod(scale^k), k in Z.
struct RootBranch {
    Fraction value;
    int multiplicity = 1;
};

struct BranchSearch {
    std::vector<RootBranch> branches;
    int root_degree = 0;      // degree of f in the root symbol
    bool complete = false;    // multiplicities add up to root_degree
};

/// Finds the roots of f(root, param, scales) = 0 that are polynomial in param
/// of degree <= max_degree. Candidates come from rational roots at sampled
/// parameters, are matched across samples by interpolation, lifted over the
/// scale symbols by comparing samples at scale 2, and are accepted only after
/// exact substitution into f. f must not depend on any other symbol.
BranchSearch find_root_branches(const Fraction& f, int root_sym, int param_sym, const std::vector<int>& scale_syms,
                                int max_degree);

}  // namespace cubalg
