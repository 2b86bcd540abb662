#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "revdet/embeddings.hpp"
#include "revdet/errors.hpp"

namespace revdet {

inline double l2_norm(const Vec& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

inline double l2_dist(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vector dims " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Deletion/insertion cost of a vector sequence: sum of its L2 norms.
inline double empty_cost(const VectorSeq& s) {
    double total = 0.0;
    for (const Vec& v : s) total += l2_norm(v);
    return total;
}

// Cumulative DTW cost over an e×f cost grid, boundary DTW(0,0)=0 and first
// row/column +inf, so every warping path starts at cell (1,1) and ends at
// (e,f). cost(i,j) is 0-indexed. Requires e,f >= 1.
template <typename CostFn>
double dtw(std::size_t e, std::size_t f, CostFn cost) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(f + 1, inf), cur(f + 1, inf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= e; ++i) {
        cur[0] = inf;
        for (std::size_t j = 1; j <= f; ++j) {
            double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
            cur[j] = cost(i - 1, j - 1) + best;
        }
        std::swap(prev, cur);
    }
    return prev[f];
}

// Word-level DTW between two paragraphs with Euclidean word cost. If exactly
// one side is empty the result is the other side's empty-cost; both empty → 0.
inline double dist_para(const VectorSeq& p, const VectorSeq& q) {
    if (p.empty() && q.empty()) return 0.0;
    if (p.empty()) return empty_cost(q);
    if (q.empty()) return empty_cost(p);
    return dtw(p.size(), q.size(),
               [&](std::size_t i, std::size_t j) { return l2_dist(p[i], q[j]); });
}

// Document-level DTW over paragraph sequences with dist_para as cell cost.
inline double wdtw(const std::vector<VectorSeq>& d1,
                   const std::vector<VectorSeq>& d2) {
    if (d1.empty() || d2.empty())
        throw EmptyDocument("wdtw needs nonempty paragraph lists");
    return dtw(d1.size(), d2.size(), [&](std::size_t i, std::size_t j) {
        return dist_para(d1[i], d2[j]);
    });
}

}  // namespace revdet
