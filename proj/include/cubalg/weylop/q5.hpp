#pragma once

#include <vector>

#include "cubalg/exactnum/fraction.hpp"
#include "cubalg/weylop/diffop.hpp"

namespace cubalg {

/// Orientation of the angular momentum used inside B.
enum class AngularSign { XPyMinusYPx, YPxMinusXPy };

struct Q5Operators {
    DiffOp Px, Py, L;
    DiffOp H, A, B, C;  // C = [A, B]
    AngularSign sign;
};

/// Builds the Q5 Hamiltonian and its integrals with symbolic h and a.
/// B = {L, Px^2} + h^2 {F1, Px} + h^2 {F2, Py}, L = x Py - y Px by default.
Q5Operators build_q5(AngularSign sign = AngularSign::XPyMinusYPx);

/// Builds Q5 with the first orientation for which [H,B] vanishes exactly; throws if neither does.
Q5Operators build_q5_verified();

/// Potential part of H, i.e. H applied to the constant function 1.
Fraction q5_potential();

/// Solves target = sum c_i basis_i for coefficients free of x, y, returned over
/// the table {h, a} (symbol atoms allowed). Throws NotInSpan or Ambiguous.
std::vector<Fraction> express_in_basis(const DiffOp& target, const std::vector<DiffOp>& basis);

/// Coefficient table used by express_in_basis: h, a, i with monomial denominators.
TablePtr scalar_table();

}  // namespace cubalg
