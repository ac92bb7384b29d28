#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "namecast/names.hpp"

namespace namecast {

// Gold speakers label unnamed turns with this reserved string. It scores as
// a class like any other; the model never predicts it.
inline constexpr const char* kUnknownSpeaker = "unknown";

struct GoldAnnotation {
    std::map<int, std::string> labels;  // segment position -> speaker name
};

// Evaluation-time alias flattening: predicted alias -> gold name, no chains.
struct AliasMap {
    std::map<std::string, std::string> pairs;
    const std::string& resolve(const std::string& name) const;
};

struct PrfScores {
    double precision = 0;
    double recall = 0;
    double fscore = 0;
};

struct EvalReport {
    std::vector<std::pair<std::string, PrfScores>> per_video;
    PrfScores aggregate;
};

// Support-weighted precision/recall/F over gold classes. Predictions are
// alias-resolved first. Throws ParseError when a gold position has no
// prediction.
PrfScores weighted_prf(const std::vector<std::string>& predictions, const GoldAnnotation& gold,
                       const AliasMap& aliases);

EvalReport make_report(const std::vector<std::pair<std::string, PrfScores>>& per_video);

enum class BaselineKind { B1, B2, B3 };

BaselineKind parse_baseline_kind(std::string_view name);

// B1: constant most-mentioned character. B2: i.i.d. draws from the prior d.
// B3: draws from d restricted to the segment's voice-gender side, falling
// back to full d when the restriction is empty (including P_ga = 0.5).
std::vector<std::string> baseline(BaselineKind kind, const CharacterRoster& roster,
                                  int n_segments, const std::map<int, double>& gender_probs,
                                  std::uint64_t seed);

// gold CSV: header "segment_pos,speaker"; alias CSV: header "alias,gold_name".
GoldAnnotation load_gold(std::string_view bytes);
AliasMap load_aliases(std::string_view bytes);

std::string format_report_csv(const EvalReport& report);
std::string format_report_summary(const EvalReport& report);

}  // namespace namecast
