#pragma once

// Exact Gaussian elimination over the Scalar field: rank and kernel bases
// for the small dense systems that show up in fixed-space computations.

#include <cstddef>
#include <vector>

#include "coxsigns/scalar.hpp"

namespace coxsigns {

// Reduce rows in place to row echelon form; returns pivot column per row.
inline std::vector<std::size_t> row_reduce(std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Scalar inv = rows[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) rows[r][j] = rows[r][j] * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

inline std::size_t matrix_rank(std::vector<std::vector<Scalar>> rows, std::size_t cols) {
    return row_reduce(rows, cols).size();
}

// Basis of { v : M v = 0 } for the given row list.
inline std::vector<std::vector<Scalar>> kernel_basis(std::vector<std::vector<Scalar>> rows,
                                                     std::size_t cols) {
    std::vector<std::size_t> pivots = row_reduce(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols, Scalar(0));
        v[free] = Scalar(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace coxsigns
