#include "namecast/reference.hpp"

#include "namecast/text.hpp"

namespace namecast {

const ReferenceRules& ReferenceRules::defaults() {
    static const ReferenceRules rules{
        {"i'm", "i am", "my name is", "name's", "call me", "it's me,"},
        {"hey", "hi", "hello", "oh", "look", "listen", "thanks", "thank you", "please",
         "sorry", "excuse me", "goodbye", "bye"},
    };
    return rules;
}

namespace {

struct TriggerPhrase {
    std::vector<std::string> words;
    bool needs_comma = false;  // "it's me," style: a comma must follow the phrase
};

TriggerPhrase parse_trigger(const std::string& phrase) {
    TriggerPhrase t;
    std::string p = phrase;
    if (!p.empty() && p.back() == ',') {
        t.needs_comma = true;
        p.pop_back();
    }
    for (const Token& tok : tokenize(p)) t.words.push_back(lowercase(tok.text));
    return t;
}

// Does the trigger phrase end exactly at token index `end` (exclusive)?
bool phrase_ends_at(const std::vector<Token>& tokens, const TriggerPhrase& phrase,
                    std::size_t end) {
    if (phrase.words.empty() || end < phrase.words.size()) return false;
    std::size_t start = end - phrase.words.size();
    for (std::size_t k = 0; k < phrase.words.size(); ++k)
        if (lowercase(tokens[start + k].text) != phrase.words[k]) return false;
    // all trigger words must sit in one sentence
    return tokens[start].sentence == tokens[end - 1].sentence;
}

}  // namespace

RefType classify_reference(const std::string& segment_text, const NameMention& mention,
                           const ReferenceRules& rules) {
    std::vector<Token> tokens = tokenize(segment_text);
    std::size_t ms = static_cast<std::size_t>(mention.token_begin);
    std::size_t me = static_cast<std::size_t>(mention.token_end);
    if (ms >= me || me > tokens.size()) return RefType::Third;

    int sentence = tokens[ms].sentence;

    // First person: a self-introduction ends within 3 tokens before the
    // mention, inside the same sentence.
    for (const std::string& raw : rules.first_triggers) {
        TriggerPhrase phrase = parse_trigger(raw);
        for (std::size_t dist = 0; dist < 3 && dist < ms; ++dist) {
            std::size_t end = ms - dist;  // dist tokens sit between trigger and mention
            if (!phrase_ends_at(tokens, phrase, end)) continue;
            if (tokens[end - 1].sentence != sentence) continue;
            if (phrase.needs_comma && !tokens[end - 1].comma_after) continue;
            return RefType::First;
        }
    }

    // Vocative checks.
    bool first_in_sentence = ms == 0 || tokens[ms - 1].sentence != sentence;
    bool last_in_sentence = me == tokens.size() || tokens[me].sentence != sentence;
    bool comma_before = tokens[ms].comma_before;
    bool comma_after = tokens[me - 1].comma_after;

    if (first_in_sentence && last_in_sentence) return RefType::Second;  // whole sentence
    if (first_in_sentence && comma_after) return RefType::Second;
    if (comma_before) return RefType::Second;  // covers the sentence-final case too
    if (!first_in_sentence) {
        for (const std::string& raw : rules.greeting_triggers) {
            TriggerPhrase phrase = parse_trigger(raw);
            if (phrase_ends_at(tokens, phrase, ms) && tokens[ms - 1].sentence == sentence)
                return RefType::Second;
        }
    }

    return RefType::Third;
}

}  // namespace namecast
