#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "revdet/document.hpp"
#include "revdet/errors.hpp"

namespace revdet {

struct ManifestEntry {
    std::string id;
    std::string path;  // relative to the manifest's directory
    std::int64_t timestamp = 0;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("short write to " + path.string());
}

// manifest.jsonl: one JSON object per line with keys id, path, timestamp.
inline std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": " + e.what());
        }
        if (!j.contains("id") || !j.contains("path") || !j.contains("timestamp"))
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": manifest entry needs id, path, timestamp");
        ManifestEntry e;
        e.id = j.at("id").get<std::string>();
        e.path = j.at("path").get<std::string>();
        e.timestamp = j.at("timestamp").get<std::int64_t>();
        entries.push_back(std::move(e));
    }
    return entries;
}

inline void save_manifest(const std::filesystem::path& path,
                          const std::vector<ManifestEntry>& entries) {
    std::ostringstream out;
    for (const ManifestEntry& e : entries) {
        nlohmann::json j;
        j["id"] = e.id;
        j["path"] = e.path;
        j["timestamp"] = e.timestamp;
        out << j.dump() << "\n";
    }
    write_file(path, out.str());
}

// Loads every document listed in <dir>/manifest.jsonl, sorted ascending by
// (timestamp, doc_id). Ids must be unique.
inline std::vector<Document> load_corpus(const std::filesystem::path& dir) {
    auto entries = load_manifest(dir / "manifest.jsonl");
    std::vector<Document> docs;
    docs.reserve(entries.size());
    std::set<std::string> seen;
    for (const ManifestEntry& e : entries) {
        if (!seen.insert(e.id).second)
            throw FormatError("duplicate doc id '" + e.id + "' in manifest");
        std::string text = read_file(dir / e.path);
        docs.push_back(parse_document(text, e.id, e.timestamp));
    }
    std::sort(docs.begin(), docs.end(), [](const Document& a, const Document& b) {
        return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                          : a.doc_id < b.doc_id;
    });
    return docs;
}

// Drops documents too small to score reliably: fewer than min_paragraphs
// paragraph leaves or fewer than min_words tokens overall.
inline std::vector<Document> corpus_filter(std::vector<Document> docs,
                                           std::size_t min_paragraphs = 3,
                                           std::size_t min_words = 300) {
    std::vector<Document> kept;
    kept.reserve(docs.size());
    for (Document& d : docs) {
        if (paragraph_count(d) >= min_paragraphs && token_count(d) >= min_words)
            kept.push_back(std::move(d));
    }
    return kept;
}

}  // namespace revdet
