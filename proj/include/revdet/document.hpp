#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revdet/tokenize.hpp"

namespace revdet {

enum class NodeKind { title, section, subsection, paragraph };

// One node of the document tree: title -> sections -> subsections ->
// paragraphs, children ordered as they appear in the source text.
struct DocNode {
    TokenSeq label;
    NodeKind kind = NodeKind::paragraph;
    std::vector<DocNode> children;
};

struct Document {
    std::string doc_id;
    std::int64_t timestamp = 0;
    DocNode root;  // kind == title; root.label holds the title tokens
    std::vector<std::string> warnings;

    const TokenSeq& title() const { return root.label; }
};

namespace detail {

inline std::string_view rstrip(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace detail

// Markup: "# " title, "## " section, "### " subsection, blank-line-separated
// paragraphs. Paragraphs attach to the innermost open heading. A heading that
// skips a level (e.g. "###" directly under the title) is promoted to one
// level below the deepest open heading and a warning is recorded.
inline Document parse_document(std::string_view text, std::string doc_id,
                               std::int64_t timestamp) {
    struct FlatNode {
        TokenSeq label;
        NodeKind kind;
        std::vector<std::size_t> children;
    };
    std::vector<FlatNode> arena;
    arena.push_back({{}, NodeKind::title, {}});

    // stack of (level, arena index); level 1 = title, 2 = section, 3 = subsection
    std::vector<std::pair<int, std::size_t>> open{{1, 0}};
    std::vector<std::string> warnings;
    bool title_set = false;
    bool any_content = false;

    TokenSeq para_tokens;
    auto flush_paragraph = [&] {
        if (para_tokens.empty()) return;
        arena.push_back({std::move(para_tokens), NodeKind::paragraph, {}});
        arena[open.back().second].children.push_back(arena.size() - 1);
        para_tokens.clear();
        any_content = true;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = detail::rstrip(text.substr(pos, eol - pos));
        pos = eol + 1;

        if (line.empty()) {
            flush_paragraph();
            if (pos > text.size()) break;
            continue;
        }

        std::size_t hashes = 0;
        while (hashes < line.size() && line[hashes] == '#') ++hashes;
        const bool is_heading =
            hashes > 0 && (hashes == line.size() || line[hashes] == ' ' ||
                           line[hashes] == '\t');
        if (!is_heading) {
            TokenSeq toks = tokenize(line);
            para_tokens.insert(para_tokens.end(), toks.begin(), toks.end());
            if (pos > text.size()) flush_paragraph();
            continue;
        }

        flush_paragraph();
        TokenSeq label = tokenize(line.substr(hashes));
        int level = static_cast<int>(hashes > 3 ? 3 : hashes);

        if (level == 1 && !title_set && !any_content) {
            arena[0].label = std::move(label);
            title_set = true;
            any_content = true;
            continue;
        }
        if (level == 1) level = 2;  // extra "#" headings act as sections

        while (open.back().first >= level) open.pop_back();
        int parent_level = open.back().first;
        if (level > parent_level + 1) {
            warnings.push_back("heading '" + join_tokens(label) +
                               "' skips a level; promoted");
            level = parent_level + 1;
        }
        arena.push_back(
            {std::move(label),
             level == 2 ? NodeKind::section : NodeKind::subsection,
             {}});
        arena[open.back().second].children.push_back(arena.size() - 1);
        open.emplace_back(level, arena.size() - 1);
        any_content = true;
        if (pos > text.size()) break;
    }
    flush_paragraph();

    // materialize the arena into an owning tree
    struct Builder {
        const std::vector<FlatNode>& arena;
        DocNode build(std::size_t i) const {
            DocNode n;
            n.label = arena[i].label;
            n.kind = arena[i].kind;
            n.children.reserve(arena[i].children.size());
            for (std::size_t c : arena[i].children) n.children.push_back(build(c));
            return n;
        }
    };
    Document doc;
    doc.doc_id = std::move(doc_id);
    doc.timestamp = timestamp;
    doc.root = Builder{arena}.build(0);
    doc.warnings = std::move(warnings);
    return doc;
}

// Inverse of parse_document on the token-level tree. Tokens contain only
// [a-z0-9], so joining with spaces and re-parsing is an exact round trip.
inline std::string serialize_document(const Document& doc) {
    std::string out;
    auto emit_block = [&](const std::string& s) {
        out += s;
        out += "\n\n";
    };
    if (!doc.root.label.empty()) emit_block("# " + join_tokens(doc.root.label));

    struct Walker {
        std::string& out;
        void operator()(const DocNode& n) const {
            switch (n.kind) {
                case NodeKind::title:
                    break;
                case NodeKind::section:
                    out += n.label.empty() ? "##" : "## " + join_tokens(n.label);
                    out += "\n\n";
                    break;
                case NodeKind::subsection:
                    out += n.label.empty() ? "###" : "### " + join_tokens(n.label);
                    out += "\n\n";
                    break;
                case NodeKind::paragraph:
                    out += join_tokens(n.label);
                    out += "\n\n";
                    return;
            }
            for (const DocNode& c : n.children) (*this)(c);
        }
    };
    Walker{out}(doc.root);
    while (!out.empty() && out.back() == '\n') out.pop_back();
    if (!out.empty()) out.push_back('\n');
    return out;
}

// Pre-order traversal emitting every non-empty node label (title and heading
// labels count as paragraphs, matching how the distance measures treat them).
inline std::vector<TokenSeq> flatten_paragraphs(const Document& doc) {
    std::vector<TokenSeq> units;
    struct Walker {
        std::vector<TokenSeq>& units;
        void operator()(const DocNode& n) const {
            if (!n.label.empty()) units.push_back(n.label);
            for (const DocNode& c : n.children) (*this)(c);
        }
    };
    Walker{units}(doc.root);
    return units;
}

// Number of paragraph leaves.
inline std::size_t paragraph_count(const Document& doc) {
    std::size_t count = 0;
    struct Walker {
        std::size_t& count;
        void operator()(const DocNode& n) const {
            if (n.kind == NodeKind::paragraph) ++count;
            for (const DocNode& c : n.children) (*this)(c);
        }
    };
    Walker{count}(doc.root);
    return count;
}

// Total tokens across all labels, headings included.
inline std::size_t token_count(const Document& doc) {
    std::size_t count = 0;
    struct Walker {
        std::size_t& count;
        void operator()(const DocNode& n) const {
            count += n.label.size();
            for (const DocNode& c : n.children) (*this)(c);
        }
    };
    Walker{count}(doc.root);
    return count;
}

inline std::size_t node_count(const DocNode& n) {
    std::size_t total = 1;
    for (const DocNode& c : n.children) total += node_count(c);
    return total;
}

}  // namespace revdet
