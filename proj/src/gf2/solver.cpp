#include "wavemu/gf2/solver.hpp"

#include <bit>

#include "wavemu/error.hpp"

namespace wavemu::gf2 {

Solver::Solver(const Matrix& c)
    : rows_(c.rows()), cols_(c.cols()), transform_(Matrix::identity(c.rows()))
{
    Matrix a = c;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
        std::size_t p = r;
        while (p < rows_ && !a.get(p, col)) ++p;
        if (p == rows_) continue;
        a.swap_rows(r, p);
        transform_.swap_rows(r, p);
        // Full (Gauss-Jordan) reduction so each pivot column is a unit vector.
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i != r && a.get(i, col)) {
                a.xor_row(i, r);
                transform_.xor_row(i, r);
            }
        }
        pivot_cols_.push_back(col);
        ++r;
    }
    rank_ = r;
}

SolveResult Solver::solve(const Vector& target) const {
    if (target.size() != rows_) throw FramingError("gf2::Solver::solve: target length mismatch");
    const Vector ty = transform_.multiply(target);
    for (std::size_t i = rank_; i < rows_; ++i)
        if (ty.get(i)) return SolveResult::unsolvable(i);
    Vector x(cols_);
    for (std::size_t i = 0; i < rank_; ++i)
        if (ty.get(i)) x.set(pivot_cols_[i], true);
    return SolveResult::solved(std::move(x));
}

SolveResult solve(const Matrix& c, const Vector& target) { return Solver(c).solve(target); }

}  // namespace wavemu::gf2
