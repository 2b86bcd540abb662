#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace revdet {

using TokenSeq = std::vector<std::string>;

inline bool is_token_char(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
           (c >= 'A' && c <= 'Z');
}

// Lowercase tokens split on runs of non-alphanumeric bytes. ASCII-only case
// folding keeps the result independent of locale; multi-byte UTF-8 sequences
// act as separators.
inline TokenSeq tokenize(std::string_view text) {
    TokenSeq out;
    std::string cur;
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
            cur.push_back(static_cast<char>(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline std::string join_tokens(const TokenSeq& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

}  // namespace revdet
