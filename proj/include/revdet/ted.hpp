#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "revdet/document.hpp"
#include "revdet/dtw.hpp"
#include "revdet/embeddings.hpp"
#include "revdet/errors.hpp"
#include "revdet/para_matrix.hpp"

namespace revdet {

// Ordered labeled tree in postorder form, ready for the tree-edit DP.
// unit_index maps a node to its position in flatten_paragraphs order
// (-1 for empty labels, which flatten skips).
struct DocTree {
    std::vector<VectorSeq> labels;    // postorder
    std::vector<int> lml;             // leftmost-leaf postorder index
    std::vector<int> unit_index;      // flattened-unit index or -1
    std::vector<double> node_empty;   // deletion/insertion cost per node
    std::vector<int> keyroots;        // ascending postorder indices
    std::size_t unit_count = 0;       // nodes with nonempty labels

    std::size_t size() const { return labels.size(); }
};

inline double total_empty_cost(const DocTree& t) {
    double s = 0.0;
    for (double c : t.node_empty) s += c;
    return s;
}

inline DocTree build_doc_tree(const Document& doc, const EmbeddingTable& table) {
    DocTree t;
    int next_unit = 0;
    struct Walker {
        DocTree& t;
        const EmbeddingTable& table;
        int& next_unit;
        // returns the node's postorder index
        int operator()(const DocNode& n) const {
            int unit = n.label.empty() ? -1 : next_unit++;
            int first_leaf = -1;
            for (const DocNode& c : n.children) {
                int ci = (*this)(c);
                if (first_leaf < 0) first_leaf = t.lml[static_cast<std::size_t>(ci)];
            }
            int me = static_cast<int>(t.labels.size());
            t.labels.push_back(embed(n.label, table));
            t.lml.push_back(first_leaf < 0 ? me : first_leaf);
            t.unit_index.push_back(unit);
            t.node_empty.push_back(empty_cost(t.labels.back()));
            return me;
        }
    };
    Walker{t, table, next_unit}(doc.root);
    t.unit_count = static_cast<std::size_t>(next_unit);

    // keyroot = highest node of each leftmost-path chain
    std::map<int, int> top;  // lml value -> largest postorder index
    for (std::size_t k = 0; k < t.size(); ++k)
        top[t.lml[k]] = static_cast<int>(k);
    for (const auto& [lml, k] : top) t.keyroots.push_back(k);
    std::sort(t.keyroots.begin(), t.keyroots.end());
    return t;
}

namespace detail {

// Ordered tree edit distance (keyroot decomposition) with per-node
// delete/insert costs and an arbitrary substitution cost.
template <typename SubCost>
double tree_edit_distance(const DocTree& a, const DocTree& b, SubCost sub) {
    if (a.size() == 0 || b.size() == 0)
        throw EmptyTree("tree edit distance needs nonempty trees");
    const std::size_t n1 = a.size(), n2 = b.size();
    std::vector<double> td(n1 * n2, 0.0);
    std::vector<double> fd((n1 + 1) * (n2 + 1), 0.0);
    const std::size_t fw = n2 + 1;  // forest-matrix row width

    for (int i : a.keyroots) {
        for (int j : b.keyroots) {
            const int li = a.lml[static_cast<std::size_t>(i)];
            const int lj = b.lml[static_cast<std::size_t>(j)];
            const int m = i - li + 1;
            const int n = j - lj + 1;
            fd[0] = 0.0;
            for (int di = 1; di <= m; ++di)
                fd[static_cast<std::size_t>(di) * fw] =
                    fd[static_cast<std::size_t>(di - 1) * fw] +
                    a.node_empty[static_cast<std::size_t>(li + di - 1)];
            for (int dj = 1; dj <= n; ++dj)
                fd[static_cast<std::size_t>(dj)] =
                    fd[static_cast<std::size_t>(dj - 1)] +
                    b.node_empty[static_cast<std::size_t>(lj + dj - 1)];
            for (int di = 1; di <= m; ++di) {
                const int pi = li + di - 1;
                for (int dj = 1; dj <= n; ++dj) {
                    const int pj = lj + dj - 1;
                    const std::size_t cur = static_cast<std::size_t>(di) * fw +
                                            static_cast<std::size_t>(dj);
                    double del = fd[cur - fw] +
                                 a.node_empty[static_cast<std::size_t>(pi)];
                    double ins = fd[cur - 1] +
                                 b.node_empty[static_cast<std::size_t>(pj)];
                    if (a.lml[static_cast<std::size_t>(pi)] == li &&
                        b.lml[static_cast<std::size_t>(pj)] == lj) {
                        double rel = fd[cur - fw - 1] + sub(pi, pj);
                        double best = std::min({del, ins, rel});
                        fd[cur] = best;
                        td[static_cast<std::size_t>(pi) * n2 +
                           static_cast<std::size_t>(pj)] = best;
                    } else {
                        const int i1 = a.lml[static_cast<std::size_t>(pi)];
                        const int j1 = b.lml[static_cast<std::size_t>(pj)];
                        double bridge =
                            fd[static_cast<std::size_t>(i1 - li) * fw +
                               static_cast<std::size_t>(j1 - lj)] +
                            td[static_cast<std::size_t>(pi) * n2 +
                               static_cast<std::size_t>(pj)];
                        fd[cur] = std::min({del, ins, bridge});
                    }
                }
            }
        }
    }
    return td[(n1 - 1) * n2 + (n2 - 1)];
}

}  // namespace detail

// Minimal edit-mapping cost between two document trees: substitution costs
// dist_para of the labels, deletion/insertion cost the label's norm sum.
inline double wted(const DocTree& a, const DocTree& b) {
    return detail::tree_edit_distance(a, b, [&](int pi, int pj) {
        return dist_para(a.labels[static_cast<std::size_t>(pi)],
                         b.labels[static_cast<std::size_t>(pj)]);
    });
}

// Same, with substitution costs served from a precomputed unit-distance
// matrix covering the trees' nonempty labels in flatten order.
inline double wted(const DocTree& a, const DocTree& b,
                   const ParaDistMatrix& pre) {
    if (pre.rows != a.unit_count || pre.cols != b.unit_count)
        throw DimensionMismatch(
            "precomputed matrix is " + std::to_string(pre.rows) + "x" +
            std::to_string(pre.cols) + ", trees have " +
            std::to_string(a.unit_count) + "/" + std::to_string(b.unit_count) +
            " labeled units");
    return detail::tree_edit_distance(a, b, [&](int pi, int pj) {
        const int ui = a.unit_index[static_cast<std::size_t>(pi)];
        const int uj = b.unit_index[static_cast<std::size_t>(pj)];
        if (ui >= 0 && uj >= 0)
            return pre.at(static_cast<std::size_t>(ui),
                          static_cast<std::size_t>(uj));
        if (ui >= 0) return a.node_empty[static_cast<std::size_t>(pi)];
        if (uj >= 0) return b.node_empty[static_cast<std::size_t>(pj)];
        return 0.0;
    });
}

}  // namespace revdet
