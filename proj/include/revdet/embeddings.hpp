#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "revdet/errors.hpp"
#include "revdet/rng.hpp"
#include "revdet/tokenize.hpp"

namespace revdet {

using Vec = std::vector<double>;
using VectorSeq = std::vector<Vec>;

class EmbeddingTable {
  public:
    EmbeddingTable() = default;
    explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }

    void insert(std::string token, Vec v) {
        if (v.size() != dim_)
            throw DimensionMismatch("vector for '" + token + "' has " +
                                    std::to_string(v.size()) +
                                    " components, table dim is " +
                                    std::to_string(dim_));
        entries_[std::move(token)] = std::move(v);
    }

    const Vec* find(const std::string& token) const {
        auto it = entries_.find(token);
        return it == entries_.end() ? nullptr : &it->second;
    }

    const std::unordered_map<std::string, Vec>& entries() const {
        return entries_;
    }

  private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, Vec> entries_;
};

// Text format: header "V D", then V lines "token c1 ... cD".
// Duplicate tokens keep the last occurrence.
inline EmbeddingTable load_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw FormatError(path.string() + ": missing header");
    std::istringstream header(line);
    long long vocab = -1, dim = -1;
    if (!(header >> vocab >> dim) || vocab < 0 || dim < 1) {
        std::string rest;
        if (!(header >> rest)) rest.clear();
        throw FormatError(path.string() + ": bad header '" + line + "'");
    }
    {
        std::string extra;
        if (header >> extra)
            throw FormatError(path.string() + ": bad header '" + line + "'");
    }

    EmbeddingTable table(static_cast<std::size_t>(dim));
    for (long long row = 0; row < vocab; ++row) {
        if (!std::getline(in, line))
            throw FormatError(path.string() + ": expected " +
                              std::to_string(vocab) + " rows, got " +
                              std::to_string(row));
        std::istringstream ss(line);
        std::string token;
        if (!(ss >> token))
            throw FormatError(path.string() + ": empty row " +
                              std::to_string(row + 2));
        Vec v(static_cast<std::size_t>(dim));
        for (long long i = 0; i < dim; ++i) {
            if (!(ss >> v[static_cast<std::size_t>(i)]))
                throw FormatError(path.string() + ": row for '" + token +
                                  "' has fewer than " + std::to_string(dim) +
                                  " components");
        }
        std::string extra;
        if (ss >> extra)
            throw FormatError(path.string() + ": row for '" + token +
                              "' has more than " + std::to_string(dim) +
                              " components");
        for (double c : v)
            if (!std::isfinite(c))
                throw FormatError(path.string() + ": non-finite component for '" +
                                  token + "'");
        table.insert(std::move(token), std::move(v));
    }
    return table;
}

inline void save_embeddings(const std::filesystem::path& path,
                            const EmbeddingTable& table) {
    // sort tokens so the file is reproducible
    std::set<std::string> tokens;
    for (const auto& [tok, v] : table.entries()) tokens.insert(tok);

    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << table.size() << " " << table.dim() << "\n";
    char buf[40];
    for (const std::string& tok : tokens) {
        out << tok;
        for (double c : *table.find(tok)) {
            std::snprintf(buf, sizeof buf, "%.9g", c);
            out << " " << buf;
        }
        out << "\n";
    }
    if (!out) throw IoError("short write to " + path.string());
}

// Deterministic stand-in for trained vectors: each token's unit vector is a
// pure function of (token, seed), so table contents never depend on set
// iteration order, platform, or run.
inline EmbeddingTable pseudo_embeddings(const std::set<std::string>& vocab,
                                        std::size_t dim, std::uint64_t seed) {
    EmbeddingTable table(dim);
    for (const std::string& token : vocab) {
        std::uint64_t state = fnv1a64(token) ^ (seed * 0x9e3779b97f4a7c15ULL);
        Vec v(dim);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                std::uint64_t x = splitmix64(state);
                double u = static_cast<double>(x >> 11) * 0x1.0p-53;  // [0,1)
                v[i] = 2.0 * u - 1.0;
                norm2 += v[i] * v[i];
            }
        } while (norm2 == 0.0);
        double inv = 1.0 / std::sqrt(norm2);
        for (double& c : v) c *= inv;
        table.insert(token, std::move(v));
    }
    return table;
}

// Replaces in-vocabulary tokens by their vectors; OOV tokens are skipped.
inline VectorSeq embed(const TokenSeq& tokens, const EmbeddingTable& table) {
    VectorSeq out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) {
        if (const Vec* v = table.find(t)) out.push_back(*v);
    }
    return out;
}

// Every distinct token in a token-sequence collection.
inline std::set<std::string> collect_vocab(const std::vector<TokenSeq>& seqs) {
    std::set<std::string> vocab;
    for (const TokenSeq& s : seqs)
        for (const std::string& t : s) vocab.insert(t);
    return vocab;
}

}  // namespace revdet
