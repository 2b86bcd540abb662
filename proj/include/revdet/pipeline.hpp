#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "revdet/calibration.hpp"
#include "revdet/corpus.hpp"
#include "revdet/document.hpp"
#include "revdet/dtw.hpp"
#include "revdet/embeddings.hpp"
#include "revdet/errors.hpp"
#include "revdet/network.hpp"
#include "revdet/para_matrix.hpp"
#include "revdet/parallel.hpp"
#include "revdet/ted.hpp"
#include "revdet/tfidf.hpp"

namespace revdet {

struct PipelineConfig {
    Measure measure = Measure::wdtw;
    double weak_tau = 0.5;
    bool auto_tau = true;
    double tau = 0.0;  // used when auto_tau is false
    std::size_t bins = 100;
    std::size_t window = 5;
    std::size_t workers = 1;

    void validate() const {
        if (weak_tau < 0.0 || weak_tau > 1.0)
            throw ConfigError("weak threshold must be in [0,1]");
        if (bins < 10) throw ConfigError("calibration bins must be >= 10");
        if (window < 1 || window % 2 == 0)
            throw ConfigError("smoothing window must be a positive odd count");
    }
};

struct StageTimes {
    double weak_s = 0.0;     // vsm similarity over candidate pairs
    double prepare_s = 0.0;  // embedding document units / trees
    double score_s = 0.0;    // strong-measure scoring over surviving pairs
    double network_s = 0.0;  // filtering + network + branching
};

struct StageCounts {
    std::size_t documents = 0;
    std::size_t candidates = 0;
    std::size_t weak_kept = 0;
    std::size_t strong_kept = 0;
    std::size_t network_vertices = 0;
    std::size_t detected = 0;
};

struct DetectResult {
    std::vector<ScoredPair> pairs;  // sorted by (original, revision)
    double tau_used = 0.0;
    std::string tau_method;         // "fixed", "valley", "fallback", "degenerate"
    CalibrationResult calibration;  // populated when tau was calibrated
    StageCounts counts;
    StageTimes times;
};

// All ordered pairs (earlier, later) with strictly increasing timestamps;
// equal timestamps never pair.
inline std::vector<std::pair<std::string, std::string>> candidate_pairs(
    const std::vector<Document>& corpus) {
    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return corpus[a].timestamp != corpus[b].timestamp
                   ? corpus[a].timestamp < corpus[b].timestamp
                   : corpus[a].doc_id < corpus[b].doc_id;
    });
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (corpus[order[i]].timestamp < corpus[order[j]].timestamp)
                pairs.emplace_back(corpus[order[i]].doc_id,
                                   corpus[order[j]].doc_id);
    return pairs;
}

// Keeps pairs whose tf-idf cosine reaches the weak threshold.
inline std::vector<std::pair<std::string, std::string>> weak_filter(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const TfIdfModel& model, double weak_tau, std::size_t workers = 1) {
    std::vector<double> sims(pairs.size());
    parallel_for(pairs.size(), workers, [&](std::size_t k) {
        sims[k] = model.similarity(pairs[k].first, pairs[k].second);
    });
    std::vector<std::pair<std::string, std::string>> kept;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (sims[k] >= weak_tau) kept.push_back(pairs[k]);
    return kept;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Candidate generation, weak filtering, and strong scoring — shared between
// detect and calibrate.
struct ScoredCorpus {
    std::vector<ScoredPair> scored;  // weak survivors with strong scores
    StageCounts counts;
    StageTimes times;
};

inline ScoredCorpus score_corpus(const std::vector<Document>& docs,
                                 const EmbeddingTable* table,
                                 const PipelineConfig& cfg) {
    cfg.validate();
    if (cfg.measure != Measure::vsm && table == nullptr)
        throw ConfigError("measure " + measure_name(cfg.measure) +
                          " needs an embedding table");

    ScoredCorpus out;
    out.counts.documents = docs.size();

    // order documents by (timestamp, id) so results never depend on input order
    std::vector<std::size_t> order(docs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return docs[a].timestamp != docs[b].timestamp
                   ? docs[a].timestamp < docs[b].timestamp
                   : docs[a].doc_id < docs[b].doc_id;
    });

    TfIdfModel model = TfIdfModel::fit(docs);

    std::vector<std::pair<std::size_t, std::size_t>> cand;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (docs[order[i]].timestamp < docs[order[j]].timestamp)
                cand.emplace_back(order[i], order[j]);
    out.counts.candidates = cand.size();

    auto t0 = Clock::now();
    std::vector<double> sims(cand.size());
    parallel_for(cand.size(), cfg.workers, [&](std::size_t k) {
        sims[k] = model.similarity(docs[cand[k].first].doc_id,
                                   docs[cand[k].second].doc_id);
    });
    std::vector<std::pair<std::size_t, std::size_t>> kept;
    for (std::size_t k = 0; k < cand.size(); ++k)
        if (sims[k] >= cfg.weak_tau) kept.push_back(cand[k]);
    out.times.weak_s = seconds_since(t0);
    out.counts.weak_kept = kept.size();
    if (kept.empty()) return out;

    // embed the units (and trees for wted) of every involved document
    t0 = Clock::now();
    std::set<std::size_t> involved_set;
    for (const auto& [i, j] : kept) {
        involved_set.insert(i);
        involved_set.insert(j);
    }
    std::vector<std::size_t> involved(involved_set.begin(), involved_set.end());
    std::vector<std::vector<VectorSeq>> units(docs.size());
    std::vector<DocTree> trees(cfg.measure == Measure::wted ? docs.size() : 0);
    if (cfg.measure != Measure::vsm) {
        parallel_for(involved.size(), cfg.workers, [&](std::size_t k) {
            std::size_t d = involved[k];
            for (const TokenSeq& unit : flatten_paragraphs(docs[d]))
                units[d].push_back(embed(unit, *table));
            if (cfg.measure == Measure::wted)
                trees[d] = build_doc_tree(docs[d], *table);
        });
    }
    out.times.prepare_s = seconds_since(t0);

    t0 = Clock::now();
    out.scored.resize(kept.size());
    parallel_for(kept.size(), cfg.workers, [&](std::size_t k) {
        const auto [i, j] = kept[k];
        double score = 0.0;
        switch (cfg.measure) {
            case Measure::vsm:
                score = model.similarity(docs[i].doc_id, docs[j].doc_id);
                break;
            case Measure::wdtw: {
                ParaDistMatrix m = para_dist_matrix(units[i], units[j]);
                score = wdtw(units[i], units[j], m);
                break;
            }
            case Measure::wted: {
                ParaDistMatrix m = para_dist_matrix(units[i], units[j]);
                score = wted(trees[i], trees[j], m);
                break;
            }
        }
        out.scored[k] = {docs[i].doc_id, docs[j].doc_id, score};
    });
    out.times.score_s = seconds_since(t0);
    return out;
}

}  // namespace detail

// Weak filter -> strong filter -> revision network -> minimum branching.
// Output pairs carry the strong measure's score, sorted by (original,
// revision). table may be null for the vsm measure.
inline DetectResult detect(const std::vector<Document>& docs,
                           const EmbeddingTable* table,
                           const PipelineConfig& cfg) {
    detail::ScoredCorpus sc = detail::score_corpus(docs, table, cfg);

    DetectResult res;
    res.counts = sc.counts;
    res.times = sc.times;

    if (!cfg.auto_tau) {
        res.tau_used = cfg.tau;
        res.tau_method = "fixed";
    } else if (sc.scored.empty()) {
        res.tau_used = 0.0;
        res.tau_method = "degenerate";
        return res;
    } else if (sc.scored.size() == 1) {
        res.tau_used = sc.scored[0].score;
        res.tau_method = "degenerate";
    } else {
        std::vector<double> scores(sc.scored.size());
        for (std::size_t k = 0; k < scores.size(); ++k)
            scores[k] = sc.scored[k].score;
        res.calibration = calibrate_tau(scores, cfg.bins, cfg.window);
        res.tau_used = res.calibration.tau;
        res.tau_method = res.calibration.method;
    }

    auto t0 = detail::Clock::now();
    std::vector<ScoredPair> strong =
        strong_filter(sc.scored, cfg.measure, res.tau_used);
    res.counts.strong_kept = strong.size();

    RevisionNetwork net = build_network(strong, cfg.measure);
    res.counts.network_vertices = net.vertices.size();
    Branching branching = min_branching(net);

    std::map<std::pair<std::string, std::string>, double> reported;
    for (const ScoredPair& p : strong)
        reported[{p.original, p.revision}] = p.score;
    for (const Arc& a : branching.arcs)
        res.pairs.push_back({a.src, a.dst, reported.at({a.src, a.dst})});
    std::sort(res.pairs.begin(), res.pairs.end(),
              [](const ScoredPair& a, const ScoredPair& b) {
                  return a.original != b.original ? a.original < b.original
                                                  : a.revision < b.revision;
              });
    res.counts.detected = res.pairs.size();
    res.times.network_s = detail::seconds_since(t0);
    return res;
}

struct CalibrateRun {
    CalibrationResult calibration;
    std::size_t score_count = 0;
    StageCounts counts;
    StageTimes times;
};

// Runs the pipeline through strong scoring and calibrates tau from the score
// histogram without applying it.
inline CalibrateRun calibrate_corpus(const std::vector<Document>& docs,
                                     const EmbeddingTable* table,
                                     const PipelineConfig& cfg) {
    detail::ScoredCorpus sc = detail::score_corpus(docs, table, cfg);
    CalibrateRun run;
    run.counts = sc.counts;
    run.times = sc.times;
    run.score_count = sc.scored.size();
    std::vector<double> scores(sc.scored.size());
    for (std::size_t k = 0; k < scores.size(); ++k)
        scores[k] = sc.scored[k].score;
    run.calibration = calibrate_tau(scores, cfg.bins, cfg.window);
    return run;
}

}  // namespace revdet
