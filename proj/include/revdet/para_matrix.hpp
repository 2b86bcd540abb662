#pragma once

#include <cstddef>
#include <vector>

#include "revdet/dtw.hpp"
#include "revdet/errors.hpp"
#include "revdet/parallel.hpp"

namespace revdet {

// All pairwise dist_para values for one document pair, plus per-unit
// empty-costs. Rows index d1's units, columns d2's.
struct ParaDistMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> cells;      // rows*cols, row-major
    std::vector<double> row_empty;  // empty-cost of each d1 unit
    std::vector<double> col_empty;  // empty-cost of each d2 unit

    double at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
};

// Cells are written slot-wise, so any worker count yields bit-identical
// matrices.
inline ParaDistMatrix para_dist_matrix(const std::vector<VectorSeq>& d1,
                                       const std::vector<VectorSeq>& d2,
                                       std::size_t workers = 1) {
    if (d1.empty() || d2.empty())
        throw EmptyDocument("para_dist_matrix needs nonempty unit lists");
    ParaDistMatrix m;
    m.rows = d1.size();
    m.cols = d2.size();
    m.cells.resize(m.rows * m.cols);
    m.row_empty.resize(m.rows);
    m.col_empty.resize(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) m.row_empty[i] = empty_cost(d1[i]);
    for (std::size_t j = 0; j < m.cols; ++j) m.col_empty[j] = empty_cost(d2[j]);
    parallel_for(m.rows * m.cols, workers, [&](std::size_t k) {
        m.cells[k] = dist_para(d1[k / m.cols], d2[k % m.cols]);
    });
    return m;
}

// wdtw against precomputed paragraph distances; bit-identical to the direct
// computation.
inline double wdtw(const std::vector<VectorSeq>& d1,
                   const std::vector<VectorSeq>& d2, const ParaDistMatrix& pre) {
    if (d1.empty() || d2.empty())
        throw EmptyDocument("wdtw needs nonempty paragraph lists");
    if (pre.rows != d1.size() || pre.cols != d2.size())
        throw DimensionMismatch("precomputed matrix is " +
                                std::to_string(pre.rows) + "x" +
                                std::to_string(pre.cols) + ", documents are " +
                                std::to_string(d1.size()) + "x" +
                                std::to_string(d2.size()));
    return dtw(pre.rows, pre.cols,
               [&](std::size_t i, std::size_t j) { return pre.at(i, j); });
}

}  // namespace revdet
