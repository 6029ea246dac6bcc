#pragma once

#include <vector>

#include "cubalg/exactnum/fraction.hpp"

namespace cubalg {

struct LinearSolution {
    enum class Status { Unique, Dependent, Inconsistent };
    Status status = Status::Unique;
    int dependent_column = -1;  // first column without a pivot when Dependent
    std::vector<Fraction> x;
};

/// Solves the overdetermined system rows * x = rhs exactly by Gauss-Jordan
/// elimination. Pivots are restricted to entries whose inverse is a valid
/// fraction (products of allowed denominator atoms, possibly times i).
LinearSolution solve_exact(std::vector<std::vector<Fraction>> rows, std::vector<Fraction> rhs, std::size_t unknowns);

/// Inverse of f when its factors are allowed denominator atoms; purely imaginary values are supported.
std::optional<Fraction> try_inverse(const Fraction& f);

}  // namespace cubalg
