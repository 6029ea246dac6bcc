#include "cubalg/schrodinger/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cubalg/error.hpp"

namespace cubalg {

TridiagMatrix discretize(const std::function<double(double)>& V, const Grid1D& grid) {
    if (!(grid.left < grid.right) || grid.n < 3) throw Error(ErrorKind::InvalidArgument, "schrodinger", "invalid grid");
    const double h = grid.spacing();
    TridiagMatrix t;
    t.diagonal.resize(static_cast<std::size_t>(grid.n));
    t.offdiagonal.assign(static_cast<std::size_t>(grid.n - 1), -0.5 / (h * h));
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        const double v = V(x);
        if (!std::isfinite(v))
            throw Error(ErrorKind::SingularPotential, "schrodinger", "potential is singular at grid node x = " + std::to_string(x));
        t.diagonal[static_cast<std::size_t>(i)] = 1.0 / (h * h) + v;
    }
    return t;
}

int count_below(const TridiagMatrix& t, double lambda) {
    int count = 0;
    double q = 1;
    for (std::size_t i = 0; i < t.diagonal.size(); ++i) {
        const double e2 = i == 0 ? 0.0 : t.offdiagonal[i - 1] * t.offdiagonal[i - 1];
        q = t.diagonal[i] - lambda - (i == 0 ? 0.0 : e2 / q);
        if (q == 0) q = -std::numeric_limits<double>::epsilon() * (std::fabs(lambda) + 1);
        if (q < 0) ++count;
    }
    return count;
}

namespace {

std::pair<double, double> gershgorin(const TridiagMatrix& t) {
    double lo = std::numeric_limits<double>::max(), hi = -lo;
    const std::size_t n = t.diagonal.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = (i > 0 ? std::fabs(t.offdiagonal[i - 1]) : 0) + (i + 1 < n ? std::fabs(t.offdiagonal[i]) : 0);
        lo = std::min(lo, t.diagonal[i] - r);
        hi = std::max(hi, t.diagonal[i] + r);
    }
    return {lo, hi};
}

// k-th smallest eigenvalue (0-based) by bisection on the inertia count.
double kth_eigenvalue(const TridiagMatrix& t, int k, double lo, double hi, double tol) {
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (count_below(t, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

void check_m(const TridiagMatrix& t, int m) {
    if (m < 0 || static_cast<std::size_t>(m) > t.diagonal.size())
        throw Error(ErrorKind::InvalidArgument, "schrodinger", "requested more eigenvalues than the matrix has");
}

}  // namespace

std::vector<double> lowest_eigenvalues_serial(const TridiagMatrix& t, int m, double tol) {
    check_m(t, m);
    auto [lo, hi] = gershgorin(t);
    std::vector<double> out;
    for (int k = 0; k < m; ++k) out.push_back(kth_eigenvalue(t, k, lo, hi, tol));
    return out;
}

std::vector<double> lowest_eigenvalues(const TridiagMatrix& t, int m, double tol) {
    check_m(t, m);
    auto [lo, hi] = gershgorin(t);
    std::vector<double> out(static_cast<std::size_t>(m));
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] = kth_eigenvalue(t, k, lo, hi, tol);
    return out;
}

std::vector<double> richardson(const std::function<double(double)>& V, double left, double right, int n, int m, double tol) {
    auto coarse = lowest_eigenvalues(discretize(V, {left, right, n}), m, tol);
    auto fine = lowest_eigenvalues(discretize(V, {left, right, 2 * n + 1}), m, tol);
    std::vector<double> out;
    for (int k = 0; k < m; ++k) out.push_back((4 * fine[static_cast<std::size_t>(k)] - coarse[static_cast<std::size_t>(k)]) / 3);
    return out;
}

namespace {

std::function<double(double)> x_potential(double a) {
    return [a](double x) {
        const double dm = x - a, dp = x + a;
        if (dm == 0 || dp == 0) return std::numeric_limits<double>::infinity();
        return x * x / (8 * a * a * a * a) + 1 / (dm * dm) + 1 / (dp * dp);
    };
}

double y_level(double a, int j) { return (j + 0.5) / (2 * a * a); }

}  // namespace

std::vector<double> q5_x_levels(const NumericOptions& opt, const std::string& which, int m) {
    if (opt.a <= 0) throw Error(ErrorKind::InvalidArgument, "schrodinger", "a must be positive");
    if (which == "middle") return richardson(x_potential(opt.a), -opt.a, opt.a, opt.grid, m, opt.tol);
    if (which == "outer") return richardson(x_potential(opt.a), opt.a, opt.outer_factor * opt.a, opt.grid, m, opt.tol);
    throw Error(ErrorKind::InvalidArgument, "schrodinger", "unknown well '" + which + "'");
}

std::vector<Level> q5_levels(const NumericOptions& opt) {
    if (opt.outer_factor < 8) throw Error(ErrorKind::InvalidArgument, "schrodinger", "outer well must extend to at least 8a");
    const double ey0 = y_level(opt.a, 0);
    std::vector<Level> out;
    for (const char* well : {"middle", "outer"}) {
        // Grow the number of x-levels until the next one is above the cutoff.
        int m = 4;
        std::vector<double> ex;
        while (true) {
            ex = q5_x_levels(opt, well, m);
            if (ex.back() + ey0 > opt.cutoff || m >= opt.grid) break;
            m *= 2;
        }
        const int copies = std::string(well) == "outer" ? 2 : 1;
        for (std::size_t i = 0; i < ex.size(); ++i)
            for (int j = 0; ex[i] + y_level(opt.a, j) <= opt.cutoff; ++j)
                for (int c = 0; c < copies; ++c)
                    out.push_back({ex[i] + y_level(opt.a, j),
                                   std::string(well) + (copies > 1 ? (c ? "R" : "L") : "") + "[" + std::to_string(i) + "]+y[" +
                                       std::to_string(j) + "]"});
    }
    std::stable_sort(out.begin(), out.end(), [](const Level& l, const Level& r) {
        return l.energy < r.energy || (l.energy == r.energy && l.origin < r.origin);
    });
    return out;
}

ComparisonReport compare(const Catalog& catalog, const std::vector<Level>& levels, double a, double cutoff, double tol) {
    ComparisonReport rep;
    std::vector<bool> used(levels.size(), false);
    const Rational ar(a);
    for (const auto& f : catalog.families)
        for (const auto& [p, verdict] : f.unitarity) {
            if (!verdict.pass) continue;
            ComparisonRow row;
            row.family = f.energy.to_string();
            row.p = p;
            row.predicted = energy_at(f, p, {Rational(1), ar}).get_d();
            if (row.predicted > cutoff) continue;
            if (row.predicted < 0) {
                row.representable = false;
                rep.rows.push_back(row);
                continue;
            }
            std::size_t best = 0;
            double dist = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < levels.size(); ++i)
                if (std::fabs(levels[i].energy - row.predicted) < dist) {
                    dist = std::fabs(levels[i].energy - row.predicted);
                    best = i;
                }
            if (!levels.empty()) {
                row.nearest = levels[best].energy;
                row.deviation = levels[best].energy - row.predicted;
                row.matched = dist <= tol;
                // every numeric level within tol counts as explained
                for (std::size_t i = 0; i < levels.size(); ++i)
                    if (std::fabs(levels[i].energy - row.predicted) <= tol) used[i] = true;
            }
            rep.pass = rep.pass && row.matched;
            rep.rows.push_back(row);
        }
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (!used[i]) rep.unmatched.push_back(levels[i].energy);
    return rep;
}

std::string comparison_csv(const ComparisonReport& report, const std::vector<Level>& levels) {
    std::ostringstream os;
    os.precision(10);
    os << "source,index,energy,deviation\n";
    for (std::size_t i = 0; i < levels.size(); ++i) os << "numeric," << i << "," << levels[i].energy << ",\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        os << "predicted," << i << "," << r.predicted << ",";
        if (r.representable) os << r.deviation;
        os << "\n";
    }
    return os.str();
}

}  // namespace cubalg
