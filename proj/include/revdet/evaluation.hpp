#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "revdet/embeddings.hpp"
#include "revdet/pipeline.hpp"

namespace revdet {

using PairSet = std::set<std::pair<std::string, std::string>>;

struct EvalReport {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

// Directed exact matching: a predicted pair counts only if both the original
// and the revision ids match the ground-truth direction.
inline EvalReport evaluate(const PairSet& predicted, const PairSet& truth) {
    EvalReport r;
    for (const auto& p : predicted) {
        if (truth.count(p)) ++r.tp;
        else ++r.fp;
    }
    r.fn = truth.size() - r.tp;
    if (r.tp + r.fp > 0)
        r.precision = static_cast<double>(r.tp) /
                      static_cast<double>(r.tp + r.fp);
    if (r.tp + r.fn > 0)
        r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
    if (r.precision + r.recall > 0.0)
        r.f_measure =
            2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

inline PairSet to_pair_set(const std::vector<ScoredPair>& pairs) {
    PairSet s;
    for (const ScoredPair& p : pairs) s.emplace(p.original, p.revision);
    return s;
}

struct BenchmarkRow {
    Measure measure = Measure::wdtw;
    EvalReport report;
    double tau_used = 0.0;
    std::string tau_method;
    StageCounts counts;
    StageTimes times;
};

// Runs detect once per measure on identical inputs and scores each against
// the ground truth. times.score_s is the comparable distance-stage figure
// (no file I/O inside it).
inline std::vector<BenchmarkRow> benchmark(const std::vector<Document>& docs,
                                           const EmbeddingTable* table,
                                           const std::vector<Measure>& measures,
                                           const PipelineConfig& base,
                                           const PairSet& truth) {
    if (measures.empty())
        throw ConfigError("benchmark needs at least one measure");
    std::vector<BenchmarkRow> rows;
    rows.reserve(measures.size());
    for (Measure m : measures) {
        PipelineConfig cfg = base;
        cfg.measure = m;
        DetectResult res = detect(docs, table, cfg);
        BenchmarkRow row;
        row.measure = m;
        row.report = evaluate(to_pair_set(res.pairs), truth);
        row.tau_used = res.tau_used;
        row.tau_method = res.tau_method;
        row.counts = res.counts;
        row.times = res.times;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace revdet
