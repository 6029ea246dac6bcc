#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cubalg/spectrum/catalog.hpp"

namespace cubalg {

/// Uniform interior grid with Dirichlet ends: x_i = left + i*h, i = 1..n, h = (right-left)/(n+1).
struct Grid1D {
    double left = 0, right = 1;
    int n = 3;
    double spacing() const { return (right - left) / (n + 1); }
    double node(int i) const { return left + (i + 1) * spacing(); }  // i = 0..n-1
};

struct TridiagMatrix {
    std::vector<double> diagonal;
    std::vector<double> offdiagonal;  // length n-1
};

/// -1/2 d^2/dx^2 + V with the three-point Laplacian (hbar = m = 1).
/// Throws SingularPotential when V is not finite at a node.
TridiagMatrix discretize(const std::function<double(double)>& V, const Grid1D& grid);

/// Number of eigenvalues strictly below lambda (Sturm sequence inertia).
int count_below(const TridiagMatrix& t, double lambda);

/// The m lowest eigenvalues by bisection, each within tol. Parallel over the index.
std::vector<double> lowest_eigenvalues(const TridiagMatrix& t, int m, double tol);
std::vector<double> lowest_eigenvalues_serial(const TridiagMatrix& t, int m, double tol);

/// Richardson step for an O(h^2) method: grids with n and 2n+1 interior points.
std::vector<double> richardson(const std::function<double(double)>& V, double left, double right, int n, int m, double tol);

struct NumericOptions {
    double a = 1;
    int grid = 2000;         // interior points of the coarse grid
    double cutoff = 4;       // keep combined levels <= cutoff
    double outer_factor = 8; // outer well is (a, outer_factor * a)
    double tol = 1e-10;      // bisection tolerance
};

struct Level {
    double energy;
    std::string origin;  // e.g. "middle[0]+y[1]"
};

/// The x-problem on (-a, a), the outer well (a, L) twice, plus the analytic y-oscillator.
std::vector<Level> q5_levels(const NumericOptions& opt);
/// x-levels only for one well: which = "middle" or "outer".
std::vector<double> q5_x_levels(const NumericOptions& opt, const std::string& which, int m);

struct ComparisonRow {
    std::string family;  // energy formula
    int p = 0;
    double predicted = 0;
    double nearest = 0;
    double deviation = 0;
    bool representable = true;  // false for negative predictions
    bool matched = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::vector<double> unmatched;  // numeric levels no prediction landed on
    bool pass = true;
};

/// Predictions are unitary catalog energies at h = 1 and the numeric a, up to the cutoff.
ComparisonReport compare(const Catalog& catalog, const std::vector<Level>& levels, double a, double cutoff, double tol);

/// CSV with columns source,index,energy,deviation.
std::string comparison_csv(const ComparisonReport& report, const std::vector<Level>& levels);

}  // namespace cubalg
