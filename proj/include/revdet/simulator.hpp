#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "revdet/corpus.hpp"
#include "revdet/document.hpp"
#include "revdet/errors.hpp"
#include "revdet/rng.hpp"
#include "revdet/tokenize.hpp"

namespace revdet {

enum class EditOp { del, add, replace };
enum class EditTarget { word, sentence, paragraph, section_name, title };

inline std::string edit_name(EditOp op, EditTarget target) {
    static const char* ops[] = {"delete", "add", "replace"};
    static const char* targets[] = {"word", "sentence", "paragraph",
                                    "section_name", "title"};
    return std::string(ops[static_cast<int>(op)]) + "_" +
           targets[static_cast<int>(target)];
}

struct SimConfig {
    double lambda = 550.0;
    double revision_rate_factor = 0.5;
    std::size_t periods = 5;
    std::uint64_t seed = 0;
    // weight of each (op, target) edit; all equally likely by default
    std::array<std::array<double, 5>, 3> op_weights = {{
        {1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 1.0},
    }};

    void validate() const {
        if (lambda <= 0.0) throw ConfigError("lambda must be positive");
        if (periods < 1) throw ConfigError("periods must be >= 1");
        double total = 0.0;
        for (const auto& row : op_weights)
            for (double w : row) {
                if (w < 0.0) throw ConfigError("edit weights must be >= 0");
                total += w;
            }
        if (total == 0.0) throw ConfigError("edit weights must not all be zero");
    }
};

// Structured form the simulator edits: sentences stay intact so edit
// operations have natural units. Serializing gives the corpus markup.
struct SimSection {
    TokenSeq name;
    std::vector<std::vector<TokenSeq>> paragraphs;  // paragraph = sentences
};

struct SimDoc {
    TokenSeq title;
    std::vector<SimSection> sections;
};

inline std::size_t sim_paragraph_count(const SimDoc& d) {
    std::size_t n = 0;
    for (const SimSection& s : d.sections) n += s.paragraphs.size();
    return n;
}

inline std::size_t sim_token_count(const SimDoc& d) {
    std::size_t n = d.title.size();
    for (const SimSection& s : d.sections) {
        n += s.name.size();
        for (const auto& para : s.paragraphs)
            for (const TokenSeq& sent : para) n += sent.size();
    }
    return n;
}

inline std::string serialize_sim(const SimDoc& d) {
    std::string out;
    if (!d.title.empty()) out += "# " + join_tokens(d.title) + "\n\n";
    for (const SimSection& s : d.sections) {
        out += s.name.empty() ? "##" : "## " + join_tokens(s.name);
        out += "\n\n";
        for (const auto& para : s.paragraphs) {
            std::string text;
            for (const TokenSeq& sent : para) {
                if (!text.empty()) text += " ";
                text += join_tokens(sent);
            }
            out += text + "\n\n";
        }
    }
    while (!out.empty() && out.back() == '\n') out.pop_back();
    if (!out.empty()) out.push_back('\n');
    return out;
}

inline Document to_document(const SimDoc& d, std::string id,
                            std::int64_t timestamp) {
    return parse_document(serialize_sim(d), std::move(id), timestamp);
}

// One tokenized sentence per nonempty line.
inline std::vector<TokenSeq> parse_text_pool(std::string_view text) {
    std::vector<TokenSeq> pool;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        TokenSeq sent = tokenize(text.substr(pos, eol - pos));
        if (!sent.empty()) pool.push_back(std::move(sent));
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return pool;
}

inline std::vector<TokenSeq> load_text_pool(const std::filesystem::path& path) {
    return parse_text_pool(read_file(path));
}

namespace detail {

struct PoolDraw {
    const std::vector<TokenSeq>& pool;
    Rng& rng;

    TokenSeq sentence() const {
        return pool[rng.below(pool.size())];
    }
    std::string word() const {
        const TokenSeq& s = pool[rng.below(pool.size())];
        return s[rng.below(s.size())];
    }
    TokenSeq prefix(std::int64_t lo, std::int64_t hi) const {
        TokenSeq s = sentence();
        auto n = static_cast<std::size_t>(rng.between(lo, hi));
        if (s.size() > n) s.resize(n);
        return s;
    }
    TokenSeq title() const { return prefix(3, 8); }
    TokenSeq section_name() const { return prefix(1, 4); }
    std::vector<TokenSeq> paragraph() const {
        std::vector<TokenSeq> p;
        auto n = static_cast<std::size_t>(rng.between(2, 5));
        for (std::size_t i = 0; i < n; ++i) p.push_back(sentence());
        return p;
    }
};

// uniform choice over all paragraphs / sentences in a doc
struct ParaRef {
    std::size_t section, para;
};
struct SentRef {
    std::size_t section, para, sent;
};

inline ParaRef pick_paragraph(const SimDoc& d, Rng& rng) {
    std::uint64_t k = rng.below(sim_paragraph_count(d));
    for (std::size_t si = 0; si < d.sections.size(); ++si) {
        if (k < d.sections[si].paragraphs.size())
            return {si, static_cast<std::size_t>(k)};
        k -= d.sections[si].paragraphs.size();
    }
    return {0, 0};  // unreachable while the doc keeps >= 1 paragraph
}

inline SentRef pick_sentence(const SimDoc& d, Rng& rng) {
    std::size_t total = 0;
    for (const SimSection& s : d.sections)
        for (const auto& p : s.paragraphs) total += p.size();
    std::uint64_t k = rng.below(total);
    for (std::size_t si = 0; si < d.sections.size(); ++si)
        for (std::size_t pi = 0; pi < d.sections[si].paragraphs.size(); ++pi) {
            const auto& p = d.sections[si].paragraphs[pi];
            if (k < p.size()) return {si, pi, static_cast<std::size_t>(k)};
            k -= p.size();
        }
    return {0, 0, 0};  // unreachable while the doc keeps >= 1 sentence
}

}  // namespace detail

// Fresh document: title, 2-6 sections, 1-5 paragraphs each, padded afterwards
// until it clears the corpus size filter (3 paragraphs / 300 tokens).
inline SimDoc generate_document(const std::vector<TokenSeq>& pool, Rng& rng) {
    if (pool.empty()) throw EmptyTextPool("text pool has no sentences");
    detail::PoolDraw draw{pool, rng};
    SimDoc d;
    d.title = draw.title();
    auto ns = static_cast<std::size_t>(rng.between(2, 6));
    for (std::size_t s = 0; s < ns; ++s) {
        SimSection sec;
        sec.name = draw.section_name();
        auto np = static_cast<std::size_t>(rng.between(1, 5));
        for (std::size_t p = 0; p < np; ++p)
            sec.paragraphs.push_back(draw.paragraph());
        d.sections.push_back(std::move(sec));
    }
    while (sim_paragraph_count(d) < 3 || sim_token_count(d) < 300) {
        std::size_t si = rng.below(d.sections.size());
        d.sections[si].paragraphs.push_back(draw.paragraph());
    }
    return d;
}

// Applies 1-10 weighted-random edits. Degenerate cases convert rather than
// no-op: deleting the last paragraph (or a one-word sentence's last remnants)
// becomes a replacement, deleting the first or only section name becomes a
// rename, and deleting a section name otherwise merges the section into its
// predecessor.
inline SimDoc revise_document(const SimDoc& original,
                              const std::vector<TokenSeq>& pool, Rng& rng,
                              const SimConfig& cfg,
                              std::vector<std::string>* log = nullptr) {
    if (pool.empty()) throw EmptyTextPool("text pool has no sentences");
    detail::PoolDraw draw{pool, rng};
    SimDoc d = original;

    auto note = [&](const std::string& s) {
        if (log) log->push_back(s);
    };

    auto delete_paragraph = [&](detail::ParaRef at) {
        auto& paras = d.sections[at.section].paragraphs;
        if (sim_paragraph_count(d) <= 1) {
            paras[at.para] = draw.paragraph();
            note("delete_paragraph(last)->replace_paragraph");
        } else {
            paras.erase(paras.begin() + static_cast<std::ptrdiff_t>(at.para));
            note("delete_paragraph");
        }
    };
    auto delete_sentence = [&](detail::SentRef at) {
        auto& para = d.sections[at.section].paragraphs[at.para];
        if (para.size() >= 2) {
            para.erase(para.begin() + static_cast<std::ptrdiff_t>(at.sent));
            note("delete_sentence");
        } else {
            delete_paragraph({at.section, at.para});
        }
    };

    auto n_ops = static_cast<std::size_t>(rng.between(1, 10));
    for (std::size_t opi = 0; opi < n_ops; ++opi) {
        double total = 0.0;
        for (const auto& row : cfg.op_weights)
            for (double w : row) total += w;
        double pick = rng.next_unit() * total;
        EditOp op = EditOp::replace;
        EditTarget target = EditTarget::title;
        double cum = 0.0;
        bool chosen = false;
        for (int o = 0; o < 3 && !chosen; ++o)
            for (int t = 0; t < 5 && !chosen; ++t) {
                cum += cfg.op_weights[static_cast<std::size_t>(o)]
                                     [static_cast<std::size_t>(t)];
                if (pick <= cum) {
                    op = static_cast<EditOp>(o);
                    target = static_cast<EditTarget>(t);
                    chosen = true;
                }
            }

        switch (op) {
            case EditOp::del:
                switch (target) {
                    case EditTarget::word: {
                        auto at = detail::pick_sentence(d, rng);
                        auto& sent =
                            d.sections[at.section].paragraphs[at.para][at.sent];
                        if (sent.size() >= 2) {
                            sent.erase(sent.begin() +
                                       static_cast<std::ptrdiff_t>(
                                           rng.below(sent.size())));
                            note("delete_word");
                        } else {
                            delete_sentence(at);
                        }
                        break;
                    }
                    case EditTarget::sentence:
                        delete_sentence(detail::pick_sentence(d, rng));
                        break;
                    case EditTarget::paragraph:
                        delete_paragraph(detail::pick_paragraph(d, rng));
                        break;
                    case EditTarget::section_name: {
                        std::size_t si = rng.below(d.sections.size());
                        if (si == 0 || d.sections.size() == 1) {
                            d.sections[si].name = draw.section_name();
                            note("delete_section_name(first)->replace");
                        } else {
                            auto& dst = d.sections[si - 1].paragraphs;
                            auto& src = d.sections[si].paragraphs;
                            dst.insert(dst.end(),
                                       std::make_move_iterator(src.begin()),
                                       std::make_move_iterator(src.end()));
                            d.sections.erase(
                                d.sections.begin() +
                                static_cast<std::ptrdiff_t>(si));
                            note("delete_section_name");
                        }
                        break;
                    }
                    case EditTarget::title:
                        if (d.title.empty()) {
                            d.title = draw.title();
                            note("delete_title(empty)->replace");
                        } else {
                            d.title.clear();
                            note("delete_title");
                        }
                        break;
                }
                break;
            case EditOp::add:
                switch (target) {
                    case EditTarget::word: {
                        auto at = detail::pick_sentence(d, rng);
                        auto& sent =
                            d.sections[at.section].paragraphs[at.para][at.sent];
                        sent.insert(sent.begin() + static_cast<std::ptrdiff_t>(
                                                       rng.below(sent.size() + 1)),
                                    draw.word());
                        note("add_word");
                        break;
                    }
                    case EditTarget::sentence: {
                        auto at = detail::pick_paragraph(d, rng);
                        auto& para = d.sections[at.section].paragraphs[at.para];
                        para.insert(para.begin() + static_cast<std::ptrdiff_t>(
                                                       rng.below(para.size() + 1)),
                                    draw.sentence());
                        note("add_sentence");
                        break;
                    }
                    case EditTarget::paragraph: {
                        std::size_t si = rng.below(d.sections.size());
                        auto& paras = d.sections[si].paragraphs;
                        paras.insert(
                            paras.begin() +
                                static_cast<std::ptrdiff_t>(
                                    rng.below(paras.size() + 1)),
                            draw.paragraph());
                        note("add_paragraph");
                        break;
                    }
                    case EditTarget::section_name: {
                        std::vector<std::size_t> splittable;
                        for (std::size_t si = 0; si < d.sections.size(); ++si)
                            if (d.sections[si].paragraphs.size() >= 2)
                                splittable.push_back(si);
                        if (!splittable.empty()) {
                            std::size_t si =
                                splittable[rng.below(splittable.size())];
                            auto& paras = d.sections[si].paragraphs;
                            auto k = static_cast<std::size_t>(rng.between(
                                1, static_cast<std::int64_t>(paras.size()) - 1));
                            SimSection tail;
                            tail.name = draw.section_name();
                            tail.paragraphs.assign(
                                std::make_move_iterator(
                                    paras.begin() +
                                    static_cast<std::ptrdiff_t>(k)),
                                std::make_move_iterator(paras.end()));
                            paras.resize(k);
                            d.sections.insert(
                                d.sections.begin() +
                                    static_cast<std::ptrdiff_t>(si + 1),
                                std::move(tail));
                            note("add_section_name(split)");
                        } else {
                            SimSection sec;
                            sec.name = draw.section_name();
                            sec.paragraphs.push_back(draw.paragraph());
                            d.sections.insert(
                                d.sections.begin() +
                                    static_cast<std::ptrdiff_t>(
                                        rng.below(d.sections.size() + 1)),
                                std::move(sec));
                            note("add_section_name(new)");
                        }
                        break;
                    }
                    case EditTarget::title:
                        d.title.insert(d.title.begin() +
                                           static_cast<std::ptrdiff_t>(
                                               rng.below(d.title.size() + 1)),
                                       draw.word());
                        note("add_title");
                        break;
                }
                break;
            case EditOp::replace:
                switch (target) {
                    case EditTarget::word: {
                        auto at = detail::pick_sentence(d, rng);
                        auto& sent =
                            d.sections[at.section].paragraphs[at.para][at.sent];
                        sent[rng.below(sent.size())] = draw.word();
                        note("replace_word");
                        break;
                    }
                    case EditTarget::sentence: {
                        auto at = detail::pick_sentence(d, rng);
                        d.sections[at.section].paragraphs[at.para][at.sent] =
                            draw.sentence();
                        note("replace_sentence");
                        break;
                    }
                    case EditTarget::paragraph: {
                        auto at = detail::pick_paragraph(d, rng);
                        d.sections[at.section].paragraphs[at.para] =
                            draw.paragraph();
                        note("replace_paragraph");
                        break;
                    }
                    case EditTarget::section_name:
                        d.sections[rng.below(d.sections.size())].name =
                            draw.section_name();
                        note("replace_section_name");
                        break;
                    case EditTarget::title:
                        d.title = draw.title();
                        note("replace_title");
                        break;
                }
                break;
        }
    }
    return d;
}

struct SimRecord {
    std::string id;
    std::int64_t timestamp = 0;
    std::size_t period = 0;
    SimDoc doc;
};

struct TruthPair {
    std::string original;
    std::string revision;
    std::size_t period = 0;
};

struct SimResult {
    std::vector<SimRecord> records;  // arrival order
    std::vector<TruthPair> truth;
    std::vector<std::string> edit_log;  // one line per revision
};

// Poisson arrival process: round(lambda) documents in period 0, then each
// period Poisson(lambda) new documents followed by Poisson(factor*lambda)
// revisions of uniformly chosen existing documents (revisions of revisions
// included, so chains branch). One rng stream drives everything; identical
// seeds give identical corpora.
inline SimResult simulate(const SimConfig& cfg,
                          const std::vector<TokenSeq>& pool) {
    cfg.validate();
    if (pool.empty()) throw EmptyTextPool("text pool has no sentences");
    Rng rng(cfg.seed);
    SimResult out;
    std::int64_t ts = 0;
    std::size_t counter = 0;

    auto next_id = [&counter] {
        char buf[16];
        std::snprintf(buf, sizeof buf, "d%05zu", ++counter);
        return std::string(buf);
    };
    auto add_doc = [&](SimDoc doc, std::size_t period) -> const SimRecord& {
        out.records.push_back({next_id(), ++ts, period, std::move(doc)});
        return out.records.back();
    };

    auto initial = static_cast<std::size_t>(std::llround(cfg.lambda));
    for (std::size_t i = 0; i < initial; ++i)
        add_doc(generate_document(pool, rng), 0);

    for (std::size_t period = 1; period <= cfg.periods; ++period) {
        std::uint64_t n_new = rng.poisson(cfg.lambda);
        for (std::uint64_t i = 0; i < n_new; ++i)
            add_doc(generate_document(pool, rng), period);

        std::uint64_t n_rev =
            rng.poisson(cfg.revision_rate_factor * cfg.lambda);
        for (std::uint64_t i = 0; i < n_rev; ++i) {
            std::size_t target = rng.below(out.records.size());
            std::string original_id = out.records[target].id;
            std::vector<std::string> ops;
            SimDoc revised =
                revise_document(out.records[target].doc, pool, rng, cfg, &ops);
            const SimRecord& rec = add_doc(std::move(revised), period);
            out.truth.push_back({original_id, rec.id, period});
            std::string line = rec.id + "<-" + original_id + ":";
            for (const std::string& op : ops) line += " " + op;
            out.edit_log.push_back(std::move(line));
        }
    }
    return out;
}

// Writes <id>.txt per document plus manifest.jsonl into dir.
inline void write_sim_corpus(const std::filesystem::path& dir,
                             const SimResult& sim) {
    std::filesystem::create_directories(dir);
    std::vector<ManifestEntry> manifest;
    manifest.reserve(sim.records.size());
    for (const SimRecord& rec : sim.records) {
        std::string fname = rec.id + ".txt";
        write_file(dir / fname, serialize_sim(rec.doc));
        manifest.push_back({rec.id, fname, rec.timestamp});
    }
    save_manifest(dir / "manifest.jsonl", manifest);
}

}  // namespace revdet
