#include "namecast/text.hpp"

#include <cctype>

namespace namecast {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
}

bool is_sentence_end(std::string_view text, std::size_t i) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') return true;
    // UTF-8 ellipsis U+2026 (0xE2 0x80 0xA6)
    return static_cast<unsigned char>(c) == 0xE2 && i + 2 < text.size() &&
           static_cast<unsigned char>(text[i + 1]) == 0x80 &&
           static_cast<unsigned char>(text[i + 2]) == 0xA6;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int sentence = 0;
    bool at_sentence_start = true;
    bool pending_comma = false;
    bool pending_nonspace = false;

    std::size_t i = 0;
    while (i < text.size()) {
        if (is_word_char(text[i]) && text[i] != '\'') {
            std::size_t b = i;
            while (i < text.size() && is_word_char(text[i])) ++i;
            std::size_t e = i;
            // apostrophes are interior only; strip quote characters at the rim
            while (b < e && text[b] == '\'') ++b;
            while (e > b && text[e - 1] == '\'') --e;
            if (e > b) {
                Token t;
                t.text = std::string(text.substr(b, e - b));
                t.begin = b;
                t.end = e;
                t.sentence = sentence;
                t.sentence_initial = at_sentence_start;
                t.comma_before = pending_comma;
                t.ws_gap_before = !pending_nonspace && !tokens.empty() &&
                                  tokens.back().sentence == sentence;
                tokens.push_back(std::move(t));
                at_sentence_start = false;
                pending_comma = false;
                pending_nonspace = false;
            }
        } else {
            if (text[i] == ',') {
                pending_comma = true;
                if (!tokens.empty()) tokens.back().comma_after = true;
            }
            if (is_sentence_end(text, i)) {
                if (!at_sentence_start) ++sentence;
                at_sentence_start = true;
                pending_comma = false;
            }
            if (!std::isspace(static_cast<unsigned char>(text[i]))) pending_nonspace = true;
            ++i;
        }
    }
    return tokens;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_capitalized_word(std::string_view s) {
    if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s.substr(1))
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '\'') return false;
    return true;
}

}  // namespace namecast
