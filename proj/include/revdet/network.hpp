#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "revdet/errors.hpp"

namespace revdet {

enum class Measure { wdtw, wted, vsm };

inline std::string measure_name(Measure m) {
    switch (m) {
        case Measure::wdtw: return "wdtw";
        case Measure::wted: return "wted";
        case Measure::vsm: return "vsm";
    }
    return "wdtw";
}

inline Measure parse_measure(const std::string& s) {
    if (s == "wdtw") return Measure::wdtw;
    if (s == "wted") return Measure::wted;
    if (s == "vsm") return Measure::vsm;
    throw ConfigError("unknown measure '" + s + "' (expected wdtw|wted|vsm)");
}

// A candidate revision pair with its measure score. `score` is a distance for
// wdtw/wted and a similarity for vsm.
struct ScoredPair {
    std::string original;
    std::string revision;
    double score = 0.0;
};

struct Arc {
    std::string src;
    std::string dst;
    double weight = 0.0;
};

struct RevisionNetwork {
    std::vector<std::string> vertices;  // sorted, no isolated vertices
    std::vector<Arc> arcs;
};

struct Branching {
    std::vector<Arc> arcs;

    double total_weight() const {
        double s = 0.0;
        for (const Arc& a : arcs) s += a.weight;
        return s;
    }
};

// Keep score <= tau for distance measures, score >= tau for vsm similarity.
inline std::vector<ScoredPair> strong_filter(const std::vector<ScoredPair>& scored,
                                             Measure measure, double tau) {
    std::vector<ScoredPair> kept;
    for (const ScoredPair& p : scored) {
        bool pass = measure == Measure::vsm ? p.score >= tau : p.score <= tau;
        if (pass) kept.push_back(p);
    }
    return kept;
}

// Vertices are exactly the endpoints of the surviving pairs, so isolated
// documents never enter the network. Arc weights are distances; vsm
// similarities are flipped to 1 - s so that smaller stays better.
inline RevisionNetwork build_network(const std::vector<ScoredPair>& pairs,
                                     Measure measure) {
    RevisionNetwork net;
    std::set<std::string> verts;
    net.arcs.reserve(pairs.size());
    for (const ScoredPair& p : pairs) {
        double w = measure == Measure::vsm ? 1.0 - p.score : p.score;
        net.arcs.push_back({p.original, p.revision, w});
        verts.insert(p.original);
        verts.insert(p.revision);
    }
    net.vertices.assign(verts.begin(), verts.end());
    return net;
}

namespace detail {

inline void check_acyclic(const RevisionNetwork& net) {
    std::map<std::string, std::size_t> indeg;
    std::map<std::string, std::vector<const std::string*>> out;
    for (const std::string& v : net.vertices) indeg[v] = 0;
    for (const Arc& a : net.arcs) {
        ++indeg[a.dst];
        out[a.src].push_back(&a.dst);
    }
    std::queue<std::string> ready;
    for (const auto& [v, d] : indeg)
        if (d == 0) ready.push(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::string v = std::move(ready.front());
        ready.pop();
        ++seen;
        for (const std::string* w : out[v])
            if (--indeg[*w] == 0) ready.push(*w);
    }
    if (seen != indeg.size())
        throw CyclicNetwork("revision network contains a cycle");
}

}  // namespace detail

// For each vertex with incoming arcs, selects its minimum-weight incoming arc
// (ties: lexicographically smallest source). On an acyclic network this is
// the minimum-cost branching covering every such head.
inline Branching min_branching(const RevisionNetwork& net) {
    detail::check_acyclic(net);
    std::map<std::string, const Arc*> best;  // head -> chosen arc
    for (const Arc& a : net.arcs) {
        auto [it, inserted] = best.try_emplace(a.dst, &a);
        if (inserted) continue;
        const Arc* cur = it->second;
        if (a.weight < cur->weight ||
            (a.weight == cur->weight && a.src < cur->src))
            it->second = &a;
    }
    Branching b;
    b.arcs.reserve(best.size());
    for (const auto& [dst, arc] : best) b.arcs.push_back(*arc);
    return b;
}

}  // namespace revdet
