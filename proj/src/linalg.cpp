#include "dysongraph/linalg.hpp"

#include "dysongraph/errors.hpp"

#include <utility>

namespace dysongraph {

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> row_reduce(RationalMatrix& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        const Rational inv = Rational(1) / a[row][col];
        for (auto& v : a[row]) v *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t c = col; c < a[r].size(); ++c)
                if (a[row][c] != 0) a[r][c] -= f * a[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::optional<std::vector<Rational>> solve_linear(RationalMatrix a, std::vector<Rational> b) {
    if (a.size() != b.size()) throw ValidationError("solve_linear: row count mismatch");
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].size() != cols) throw ValidationError("solve_linear: ragged matrix");
        a[r].push_back(b[r]);
    }
    auto pivots = row_reduce(a, cols);
    for (std::size_t r = pivots.size(); r < a.size(); ++r)
        if (a[r][cols] != 0) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

Rational determinant(RationalMatrix a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        if (a[col].size() != n) throw ValidationError("determinant: matrix is not square");
        std::size_t p = col;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            std::swap(a[p], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

std::size_t rank(RationalMatrix a) {
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    return row_reduce(a, cols).size();
}

}  // namespace dysongraph
