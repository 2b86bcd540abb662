#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "revdet/calibration.hpp"
#include "revdet/errors.hpp"
#include "revdet/network.hpp"
#include "revdet/simulator.hpp"

namespace revdet {

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    q += "\"";
    return q;
}

inline std::vector<std::string> split_csv_line(const std::string& line,
                                               const std::string& where) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw FormatError(where + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

inline double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw FormatError(where + ": bad number '" + s + "'");
        return v;
    } catch (const std::exception&) {
        throw FormatError(where + ": bad number '" + s + "'");
    }
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace detail

inline void write_predictions(const std::filesystem::path& path,
                              const std::vector<ScoredPair>& pairs,
                              Measure measure) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "original_id,revision_id,score,measure\n";
    const std::string m = measure_name(measure);
    for (const ScoredPair& p : pairs)
        out << detail::csv_field(p.original) << ","
            << detail::csv_field(p.revision) << ","
            << detail::format_double(p.score) << "," << m << "\n";
    if (!out) throw IoError("short write to " + path.string());
}

inline std::vector<ScoredPair> read_predictions(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) ||
        detail::split_csv_line(line, path.string()) !=
            std::vector<std::string>{"original_id", "revision_id", "score",
                                     "measure"})
        throw FormatError(path.string() +
                          ": expected header original_id,revision_id,score,measure");
    std::vector<ScoredPair> pairs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = path.string() + ":" + std::to_string(lineno);
        auto f = detail::split_csv_line(line, where);
        if (f.size() != 4)
            throw FormatError(where + ": expected 4 fields, got " +
                              std::to_string(f.size()));
        pairs.push_back({f[0], f[1], detail::parse_double(f[2], where)});
    }
    return pairs;
}

inline void write_ground_truth(const std::filesystem::path& path,
                               const std::vector<TruthPair>& truth) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "original_id,revision_id,period\n";
    for (const TruthPair& t : truth)
        out << detail::csv_field(t.original) << ","
            << detail::csv_field(t.revision) << "," << t.period << "\n";
    if (!out) throw IoError("short write to " + path.string());
}

inline std::vector<TruthPair> read_ground_truth(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) ||
        detail::split_csv_line(line, path.string()) !=
            std::vector<std::string>{"original_id", "revision_id", "period"})
        throw FormatError(path.string() +
                          ": expected header original_id,revision_id,period");
    std::vector<TruthPair> truth;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = path.string() + ":" + std::to_string(lineno);
        auto f = detail::split_csv_line(line, where);
        if (f.size() != 3)
            throw FormatError(where + ": expected 3 fields, got " +
                              std::to_string(f.size()));
        truth.push_back(
            {f[0], f[1],
             static_cast<std::size_t>(detail::parse_double(f[2], where))});
    }
    return truth;
}

inline void write_histogram(const std::filesystem::path& path,
                            const std::vector<HistogramBin>& bins) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "bin_left,bin_right,count,smoothed_count\n";
    for (const HistogramBin& b : bins)
        out << detail::format_double(b.left) << ","
            << detail::format_double(b.right) << "," << b.count << ","
            << detail::format_double(b.smoothed) << "\n";
    if (!out) throw IoError("short write to " + path.string());
}

}  // namespace revdet
