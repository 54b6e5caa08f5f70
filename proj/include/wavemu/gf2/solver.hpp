#pragma once

#include <optional>

#include "wavemu/gf2/matrix.hpp"

namespace wavemu::gf2 {

/// No x satisfies C x = y. `row` is the first eliminated row whose
/// transformed target bit is 1 while its coefficients vanished.
struct Unsolvable {
    std::size_t row;
};

class SolveResult {
public:
    static SolveResult solved(Vector x) { return SolveResult(std::move(x), 0); }
    static SolveResult unsolvable(std::size_t row) { return SolveResult(std::nullopt, row); }

    bool ok() const { return x_.has_value(); }
    const Vector& solution() const { return *x_; }
    Unsolvable failure() const { return {row_}; }

private:
    SolveResult(std::optional<Vector> x, std::size_t row) : x_(std::move(x)), row_(row) {}
    std::optional<Vector> x_;
    std::size_t row_;
};

/// Factor-once / solve-many. The constructor reduces C to reduced row echelon
/// form while recording the row transform T (T C = RREF). A solve then costs
/// one packed product T y; free variables are zero.
class Solver {
public:
    explicit Solver(const Matrix& c);

    std::size_t rank() const { return rank_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool full_row_rank() const { return rank_ == rows_; }

    SolveResult solve(const Vector& target) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t rank_ = 0;
    Matrix transform_;
    std::vector<std::size_t> pivot_cols_;
};

/// One-shot convenience wrapper.
SolveResult solve(const Matrix& c, const Vector& target);

}  // namespace wavemu::gf2
