#include "cubalg/exactnum/linsolve.hpp"

#include "cubalg/error.hpp"

namespace cubalg {

std::optional<Fraction> try_inverse(const Fraction& f) {
    if (f.is_zero()) return std::nullopt;
    const int im = f.table()->imaginary();
    try {
        if (im >= 0 && f.depends_on(im)) {
            Fraction i(MultiPoly::symbol(f.table(), im));
            Fraction q = f * (-i);  // f = i*q when f is purely imaginary
            if (q.depends_on(im)) return std::nullopt;
            return q.inverse() * (-i);
        }
        return f.inverse();
    } catch (const Error&) {
        return std::nullopt;
    }
}

LinearSolution solve_exact(std::vector<std::vector<Fraction>> rows, std::vector<Fraction> rhs, std::size_t unknowns) {
    LinearSolution out;
    const std::size_t m = rows.size();
    std::vector<int> pivot_row(unknowns, -1);
    std::vector<bool> used(m, false);
    for (std::size_t col = 0; col < unknowns; ++col) {
        int best = -1;
        std::optional<Fraction> best_inv;
        std::size_t best_size = 0;
        for (std::size_t r = 0; r < m; ++r) {
            if (used[r] || rows[r][col].is_zero()) continue;
            std::size_t size = rows[r][col].num().size() + rows[r][col].den().size();
            if (best >= 0 && size >= best_size) continue;
            if (auto inv = try_inverse(rows[r][col])) {
                best = static_cast<int>(r);
                best_inv = std::move(inv);
                best_size = size;
            }
        }
        if (best < 0) {
            if (out.dependent_column < 0) out.dependent_column = static_cast<int>(col);
            continue;
        }
        used[static_cast<std::size_t>(best)] = true;
        pivot_row[col] = best;
        auto& prow = rows[static_cast<std::size_t>(best)];
        for (auto& v : prow)
            if (!v.is_zero()) v *= *best_inv;
        rhs[static_cast<std::size_t>(best)] *= *best_inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (static_cast<int>(r) == best || rows[r][col].is_zero()) continue;
            Fraction factor = rows[r][col];
            for (std::size_t j = 0; j < unknowns; ++j)
                if (!prow[j].is_zero()) rows[r][j] -= factor * prow[j];
            rhs[r] -= factor * rhs[static_cast<std::size_t>(best)];
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        if (used[r] || rhs[r].is_zero()) continue;
        bool all_zero = true;
        for (const auto& v : rows[r]) all_zero = all_zero && v.is_zero();
        if (all_zero) {
            out.status = LinearSolution::Status::Inconsistent;
            return out;
        }
    }
    if (out.dependent_column >= 0) {
        out.status = LinearSolution::Status::Dependent;
        return out;
    }
    for (std::size_t col = 0; col < unknowns; ++col) out.x.push_back(rhs[static_cast<std::size_t>(pivot_row[col])]);
    return out;
}

}  // namespace cubalg
