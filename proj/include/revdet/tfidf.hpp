#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "revdet/document.hpp"
#include "revdet/errors.hpp"

namespace revdet {

// Bag-of-words tf-idf vectors over a corpus, tf = raw count,
// idf(t) = ln(N / df(t)).
class TfIdfModel {
  public:
    static TfIdfModel fit(const std::vector<Document>& docs) {
        TfIdfModel model;
        const std::size_t n = docs.size();

        std::vector<std::map<std::string, std::size_t>> counts(n);
        std::unordered_map<std::string, std::size_t> df;
        for (std::size_t d = 0; d < n; ++d) {
            for (const TokenSeq& unit : flatten_paragraphs(docs[d]))
                for (const std::string& t : unit) ++counts[d][t];
            for (const auto& [t, c] : counts[d]) ++df[t];
        }
        for (const auto& [t, dcount] : df)
            model.idf_[t] =
                std::log(static_cast<double>(n) / static_cast<double>(dcount));

        for (std::size_t d = 0; d < n; ++d) {
            DocVec v;
            double norm2 = 0.0;
            for (const auto& [t, c] : counts[d]) {
                double w = static_cast<double>(c) * model.idf_.at(t);
                if (w == 0.0) continue;
                v.weights.emplace_back(t, w);
                norm2 += w * w;
            }
            v.norm = std::sqrt(norm2);
            model.index_[docs[d].doc_id] = model.vecs_.size();
            model.vecs_.push_back(std::move(v));
        }
        return model;
    }

    // Cosine of the two tf-idf vectors; 0 if either is all-zero. Equal
    // vectors score exactly 1 so duplicates never lose to rounding.
    double similarity(const std::string& a, const std::string& b) const {
        const DocVec& va = vec(a);
        const DocVec& vb = vec(b);
        if (va.norm == 0.0 || vb.norm == 0.0) return 0.0;
        if (va.weights == vb.weights) return 1.0;
        double dot = 0.0;
        auto ia = va.weights.begin(), ib = vb.weights.begin();
        while (ia != va.weights.end() && ib != vb.weights.end()) {
            if (ia->first < ib->first) {
                ++ia;
            } else if (ib->first < ia->first) {
                ++ib;
            } else {
                dot += ia->second * ib->second;
                ++ia;
                ++ib;
            }
        }
        double sim = dot / (va.norm * vb.norm);
        return sim < 0.0 ? 0.0 : (sim > 1.0 ? 1.0 : sim);
    }

    bool contains(const std::string& doc_id) const {
        return index_.count(doc_id) != 0;
    }

    double idf(const std::string& token) const {
        auto it = idf_.find(token);
        return it == idf_.end() ? 0.0 : it->second;
    }

    std::size_t doc_count() const { return vecs_.size(); }

  private:
    struct DocVec {
        std::vector<std::pair<std::string, double>> weights;  // token-sorted
        double norm = 0.0;
    };

    const DocVec& vec(const std::string& doc_id) const {
        auto it = index_.find(doc_id);
        if (it == index_.end())
            throw UnknownDocument("no tf-idf vector for '" + doc_id + "'");
        return vecs_[it->second];
    }

    std::unordered_map<std::string, double> idf_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<DocVec> vecs_;
};

inline double vsm_similarity(const std::string& a, const std::string& b,
                             const TfIdfModel& model) {
    return model.similarity(a, b);
}

}  // namespace revdet
