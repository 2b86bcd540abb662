#pragma once

// Brute-force reference implementations and random fixture builders shared by
// the unit tests and the acceptance checks. Everything here trades speed for
// obviousness.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <revdet/dtw.hpp>
#include <revdet/network.hpp>
#include <revdet/rng.hpp>
#include <revdet/ted.hpp>

namespace oracles {

using revdet::Arc;
using revdet::DocTree;
using revdet::Rng;
using revdet::Vec;
using revdet::VectorSeq;

// ---- random fixtures ----

inline Vec random_vec(Rng& rng, std::size_t dim, double lo = -1.0,
                      double hi = 1.0) {
    Vec v(dim);
    for (double& c : v) c = lo + (hi - lo) * rng.next_unit();
    return v;
}

inline VectorSeq random_seq(Rng& rng, std::size_t len, std::size_t dim) {
    VectorSeq s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(random_vec(rng, dim));
    return s;
}

// ---- DTW reference: explicit minimum over all monotone warping paths ----

inline double dtw_paths(std::size_t e, std::size_t f,
                        const std::function<double(std::size_t, std::size_t)>& cost) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::function<double(std::size_t, std::size_t)> from =
        [&](std::size_t i, std::size_t j) -> double {
        double c = cost(i, j);
        if (i + 1 == e && j + 1 == f) return c;
        double best = inf;
        if (i + 1 < e) best = std::min(best, from(i + 1, j));
        if (j + 1 < f) best = std::min(best, from(i, j + 1));
        if (i + 1 < e && j + 1 < f) best = std::min(best, from(i + 1, j + 1));
        return c + best;
    };
    return from(0, 0);
}

inline double dist_para_brute(const VectorSeq& p, const VectorSeq& q) {
    if (p.empty() && q.empty()) return 0.0;
    if (p.empty()) return revdet::empty_cost(q);
    if (q.empty()) return revdet::empty_cost(p);
    return dtw_paths(p.size(), q.size(), [&](std::size_t i, std::size_t j) {
        return revdet::l2_dist(p[i], q[j]);
    });
}

// ---- tree fixtures ----

struct TNode {
    VectorSeq label;
    std::vector<TNode> children;
};

// Assembles the postorder arrays the tree-edit DP consumes; independent of
// the library's document-based builder.
inline DocTree make_tree(const TNode& root) {
    DocTree t;
    int next_unit = 0;
    std::function<int(const TNode&)> walk = [&](const TNode& n) -> int {
        int unit = n.label.empty() ? -1 : next_unit++;
        int first_leaf = -1;
        for (const TNode& c : n.children) {
            int ci = walk(c);
            if (first_leaf < 0) first_leaf = t.lml[static_cast<std::size_t>(ci)];
        }
        int me = static_cast<int>(t.labels.size());
        t.labels.push_back(n.label);
        t.lml.push_back(first_leaf < 0 ? me : first_leaf);
        t.unit_index.push_back(unit);
        t.node_empty.push_back(revdet::empty_cost(n.label));
        return me;
    };
    walk(root);
    t.unit_count = static_cast<std::size_t>(next_unit);
    std::map<int, int> top;
    for (std::size_t k = 0; k < t.size(); ++k)
        top[t.lml[k]] = static_cast<int>(k);
    for (const auto& [lml, k] : top) t.keyroots.push_back(k);
    std::sort(t.keyroots.begin(), t.keyroots.end());
    return t;
}

// Random ordered tree: each new node attaches under a uniformly chosen
// existing node. Labels are single random vectors.
inline TNode random_tnode(Rng& rng, std::size_t nodes, std::size_t dim) {
    TNode root{{random_vec(rng, dim)}, {}};
    std::vector<TNode*> all{&root};
    for (std::size_t k = 1; k < nodes; ++k) {
        TNode* parent = all[rng.below(all.size())];
        parent->children.push_back({{random_vec(rng, dim)}, {}});
        // children vector may reallocate; rebuild the pointer list
        all.clear();
        std::function<void(TNode&)> collect = [&](TNode& n) {
            all.push_back(&n);
            for (TNode& c : n.children) collect(c);
        };
        collect(root);
    }
    return root;
}

// ---- TED reference: exhaustive search over valid ordered-tree mappings ----

// strict ancestor test in postorder form: descendants of a occupy [lml[a], a)
inline bool is_ancestor(const DocTree& t, int a, int d) {
    return t.lml[static_cast<std::size_t>(a)] <= d && d < a;
}

// relation codes: 0 a-left-of-b, 1 a-ancestor-of-b, 2 a-descendant-of-b,
// 3 b-left-of-a
inline int relation(const DocTree& t, int a, int b) {
    if (is_ancestor(t, a, b)) return 1;
    if (is_ancestor(t, b, a)) return 2;
    return a < b ? 0 : 3;
}

inline double ted_mappings(const DocTree& a, const DocTree& b) {
    double all_ins = 0.0;
    for (double c : b.node_empty) all_ins += c;

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> chosen;
    std::vector<bool> used(b.size(), false);

    std::function<void(int, double)> go = [&](int i, double cost) {
        if (i == static_cast<int>(a.size())) {
            best = std::min(best, cost);
            return;
        }
        go(i + 1, cost + a.node_empty[static_cast<std::size_t>(i)]);
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            bool ok = true;
            for (const auto& [pi, pj] : chosen)
                if (relation(a, pi, i) != relation(b, pj, j)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.emplace_back(i, j);
            used[static_cast<std::size_t>(j)] = true;
            go(i + 1, cost +
                          revdet::dist_para(a.labels[static_cast<std::size_t>(i)],
                                            b.labels[static_cast<std::size_t>(j)]) -
                          b.node_empty[static_cast<std::size_t>(j)]);
            chosen.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    go(0, all_ins);
    return best;
}

// ---- branching reference: exhaustive one-arc-per-head enumeration ----

inline double branching_enumerate(const revdet::RevisionNetwork& net) {
    std::map<std::string, std::vector<const Arc*>> incoming;
    for (const Arc& a : net.arcs) incoming[a.dst].push_back(&a);
    std::vector<const std::vector<const Arc*>*> groups;
    for (const auto& [dst, arcs] : incoming) groups.push_back(&arcs);

    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, double)> go = [&](std::size_t g,
                                                      double total) {
        if (g == groups.size()) {
            best = std::min(best, total);
            return;
        }
        for (const Arc* a : *groups[g]) go(g + 1, total + a->weight);
    };
    go(0, 0.0);
    return groups.empty() ? 0.0 : best;
}

inline revdet::RevisionNetwork random_network(Rng& rng, std::size_t max_vertices) {
    auto n = static_cast<std::size_t>(rng.between(
        2, static_cast<std::int64_t>(max_vertices)));
    std::vector<revdet::ScoredPair> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.next_unit() <= 0.45)
                pairs.push_back({"v" + std::to_string(i),
                                 "v" + std::to_string(j), rng.next_unit()});
    return revdet::build_network(pairs, revdet::Measure::wdtw);
}

}  // namespace oracles
