#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace namecast {

// One word token of a dialogue line. A token is a maximal run of letters,
// digits and interior apostrophes; everything else separates tokens.
struct Token {
    std::string text;
    std::size_t begin = 0;  // byte offset into the source string
    std::size_t end = 0;    // one past the last byte
    int sentence = 0;       // 0-based sentence number
    bool sentence_initial = false;
    bool comma_before = false;  // a comma sits in the gap before this token
    bool comma_after = false;   // a comma sits in the gap after this token
    bool ws_gap_before = false; // the gap before this token is whitespace only
};

// Sentences split on '.', '!', '?' and the UTF-8 ellipsis. Abbreviations are
// not special-cased; dialogue subtitles rarely contain them.
std::vector<Token> tokenize(std::string_view text);

std::string lowercase(std::string_view s);

// True for tokens shaped like a name: leading uppercase letter, then letters
// or apostrophes.
bool is_capitalized_word(std::string_view s);

}  // namespace namecast
