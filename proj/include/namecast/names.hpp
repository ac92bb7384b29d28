#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "namecast/lexicon.hpp"
#include "namecast/srt.hpp"

namespace namecast {

enum class RefType { First, Second, Third };

struct NameMention {
    int segment_pos = 0;   // 0-based position in the cleaned segment list
    std::string surface;   // as written, tokens joined by a single space
    int token_begin = 0;   // token offsets in the segment's token sequence
    int token_end = 0;     // exclusive
    RefType ref_type = RefType::Third;
};

struct NameCluster {
    std::string canonical;
    std::set<std::string> aliases;
    long long count_first = 0;
    long long count_second = 0;
    long long count_third = 0;
    double p_male_name = 0.5;  // lexicon gender of the canonical surface
};

// Name clusters in class-index order plus the mention prior d (sums to 1).
struct CharacterRoster {
    std::vector<NameCluster> clusters;
    std::vector<double> prior;

    int size() const { return static_cast<int>(clusters.size()); }

    // Class index of a mention surface, or -1 when no cluster owns it.
    int class_of(const std::string& surface) const;

private:
    friend CharacterRoster build_roster(const std::vector<NameCluster>&,
                                        const std::vector<NameMention>&);
    std::map<std::string, int> alias_to_class_;
};

// Capitalized tokens that are never treated as name mentions.
const std::set<std::string>& mention_stopwords();

// A token run is a mention when each token is capitalized and either found in
// the lexicon or (not sentence-initial and not stop-listed). Runs merge only
// across pure-whitespace gaps. ref_type is left at Third; callers classify.
std::vector<NameMention> extract_mentions(const std::vector<SubtitleSegment>& segments,
                                          const NameLexicon& lexicon);

// Single-link clustering. Surfaces link when the normalized edit distance is
// at most 0.34 or one is a prefix of the other, unless their lexicon genders
// sit on opposite sides of 0.5. Mentions must already carry ref_type.
std::vector<NameCluster> cluster_names(const std::vector<NameMention>& mentions,
                                       const NameLexicon& lexicon);

// Drops clusters mentioned fewer than three times and clusters seen only in
// the third person, then normalizes d over first+second counts. Throws
// ParseError("no identifiable characters") when nothing survives.
CharacterRoster build_roster(const std::vector<NameCluster>& clusters,
                             const std::vector<NameMention>& classified_mentions);

// Normalized Levenshtein distance: edits / max(length); 0 for two empties.
double normalized_edit_distance(std::string_view a, std::string_view b);

}  // namespace namecast
