#pragma once

#include <string>
#include <vector>

#include "namecast/names.hpp"

namespace namecast {

// Trigger phrases are token sequences, lowercased. A trailing comma in a
// first-person trigger ("it's me,") additionally requires a comma between
// the phrase and the mention.
struct ReferenceRules {
    std::vector<std::string> first_triggers;
    std::vector<std::string> greeting_triggers;
    static const ReferenceRules& defaults();
};

// First: a self-introduction trigger ends within 3 tokens before the mention,
// same sentence. Second: vocative position (leading or trailing with a comma,
// after a comma or greeting, or the whole sentence). Otherwise Third.
RefType classify_reference(const std::string& segment_text, const NameMention& mention,
                           const ReferenceRules& rules = ReferenceRules::defaults());

}  // namespace namecast
