#pragma once

#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "namecast/names.hpp"

namespace namecast {

// Everything the optimizer consumes: hard positive labels, distance-decayed
// multiple-instance targets, negative pairs, per-segment gender probabilities
// and the mention prior d.
struct ConstraintSet {
    struct MiTarget {
        int instance = 0;
        int cls = 0;
        double weight = 0;  // in (0, 1]
        auto operator<=>(const MiTarget&) const = default;
    };

    int n = 0;  // instance count
    std::vector<std::pair<int, int>> positives;  // (instance, class), sorted, unique
    std::vector<MiTarget> mi_targets;            // sorted
    std::vector<std::pair<int, int>> negatives;  // sorted, unique
    std::map<int, double> p_male_audio;          // P_ga; absent segments mean 0.5
    std::vector<double> prior;                   // d

    double p_male(int instance) const {
        auto it = p_male_audio.find(instance);
        return it == p_male_audio.end() ? 0.5 : it->second;
    }
};

// First person -> positive (i, j). Second person -> MI targets on both sides
// of i within the window, weight 1/(1+distance). Third person -> negatives on
// {i-1, i, i+1} clipped to range. Positives knock matching pairs out of the
// negative and MI sets. Mentions whose surface is not in the roster are
// skipped. Throws ConfigError when window < 1.
ConstraintSet build_constraints(const std::vector<NameMention>& mentions,
                                const CharacterRoster& roster,
                                const std::map<int, double>& gender_probs, int n_instances,
                                int window);

// CSV with header "segment_pos,p_male", values in [0,1].
std::map<int, double> load_gender_probs(std::string_view bytes);

}  // namespace namecast
